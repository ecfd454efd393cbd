use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fox::FreeWord;
use crate::linalg::IntMatrix;

/// Element of the integral group ring of a free group, as a sparse map
/// from reduced words to nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<FreeWord, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(FreeWord::identity())
    }

    pub fn from_word(w: FreeWord) -> Self {
        Self::term(w, BigInt::one())
    }

    pub fn term(w: FreeWord, c: BigInt) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn add_term(&mut self, w: FreeWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// Left multiplication by a group element.
    pub fn left_mul_word(&self, w: &FreeWord) -> Self {
        let mut out = Self::zero();
        for (v, c) in &self.terms {
            out.add_term(w.mul(v), c.clone());
        }
        out
    }

    /// Applies a map on basis words and merges the resulting terms.
    pub fn map_words(&self, f: impl Fn(&FreeWord) -> FreeWord) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// Sum of absolute values of coefficients.
    pub fn norm(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{w}")?;
            } else if w.is_identity() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}{w}")?;
            }
        }
        Ok(())
    }
}

/// Rectangular matrix over the free group ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GroupRingElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for {rows}x{cols}", entries.len())));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![GroupRingElement::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = GroupRingElement::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GroupRingElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = GroupRingElement::zero();
                for l in 0..self.cols {
                    let a = self.get(i, l);
                    let b = other.get(l, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> GroupRingElement {
        (0..self.rows.min(self.cols)).fold(GroupRingElement::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn map_entries(&self, f: impl Fn(&GroupRingElement) -> GroupRingElement) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// `‖A‖ = sum_{i,j} ‖a_ij‖`.
    pub fn norm(&self) -> BigInt {
        self.entries.iter().map(GroupRingElement::norm).sum()
    }

    /// Entrywise norms `(‖a_ij‖)`.
    pub fn norm_matrix(&self) -> IntMatrix {
        IntMatrix::new(self.rows, self.cols, self.entries.iter().map(GroupRingElement::norm).collect())
            .expect("shape is preserved")
    }
}

pub fn ring_norm(x: &GroupRingElement) -> BigInt {
    x.norm()
}

pub fn matrix_norm(a: &GroupRingMatrix) -> BigInt {
    a.norm()
}

pub fn matrix_of_norms(a: &GroupRingMatrix) -> IntMatrix {
    a.norm_matrix()
}
