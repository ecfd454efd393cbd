use std::fmt;
use std::ops::{Index, IndexMut};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntPolynomial;

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
///
/// Zero-sized matrices are allowed: a `0 x 0` matrix stands for the
/// endomorphism of the trivial lattice `Z^0` and has determinant 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from nested rows. Ragged input is rejected.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().cloned().map(Into::into))
            .collect();
        Self::new(rows.len(), cols, entries)
    }

    /// Convenience for tests and fixtures; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&owned).expect("rectangular rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols))
            .map(|i| &self[(i, i)])
            .sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
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
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `I - self`; the operator whose cokernel indexes Reidemeister classes.
    pub fn one_minus(&self) -> Result<Self> {
        self.require_square()?;
        Self::identity(self.rows).sub(self)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Characteristic polynomial `det(xI - A)` by Faddeev-LeVerrier.
    ///
    /// Each division by `k` must be exact; a remainder would mean an
    /// arithmetic bug, so it is asserted.
    pub fn char_poly(&self) -> Result<IntPolynomial> {
        self.require_square()?;
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            m = self.mul(&m)?;
            for i in 0..n {
                m[(i, i)] += &coeffs[n - k + 1];
            }
            let t = self.mul(&m)?.trace();
            let (q, rem) = (-t).div_rem(&BigInt::from(k));
            assert!(rem.is_zero(), "Faddeev-LeVerrier produced a non-integral coefficient");
            coeffs[n - k] = q;
        }
        Ok(IntPolynomial::new(coeffs))
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        self.require_square()?;
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * &other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Submatrix on the given (sorted) row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self[(i, j)].clone()))
            .collect();
        Self {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// `i`-th exterior power: the matrix of `i x i` minors, with index
    /// subsets in lexicographic order.
    pub fn exterior_power(&self, i: usize) -> Result<Self> {
        self.require_square()?;
        let k = self.rows;
        if i > k {
            return Err(Error::BadIndex(format!("exterior power {i} of a {k}x{k} matrix")));
        }
        let subsets: Vec<Vec<usize>> = (0..k).combinations(i).collect();
        let n = subsets.len();
        let mut out = Self::zeros(n, n);
        for (r, rs) in subsets.iter().enumerate() {
            for (c, cs) in subsets.iter().enumerate() {
                out[(r, c)] = self.submatrix(rs, cs).det()?;
            }
        }
        Ok(out)
    }

    /// Inverse of a matrix with determinant +-1, via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        let d = self.det()?;
        if !d.abs().is_one() {
            return Err(Error::NonInvertible(format!("determinant {d} is not a unit")));
        }
        let n = self.rows;
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let rs: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cs: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.submatrix(&rs, &cs).det()?;
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                inv[(i, j)] = cof * &d;
            }
        }
        Ok(inv)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|x| !x.is_negative())
    }

    pub fn entry_sum(&self) -> BigInt {
        self.entries.iter().sum()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()))
            .finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}]", self.row(i).iter().join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn det_examples() {
        let cat = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(cat.one_minus().unwrap().det().unwrap(), BigInt::from(-1));
        assert_eq!(IntMatrix::identity(3).det().unwrap(), BigInt::one());
        let rot = m(&[&[0, 1], &[-1, 0]]);
        assert_eq!(rot.one_minus().unwrap().det().unwrap(), BigInt::from(2));
    }

    #[test]
    fn det_needs_pivoting() {
        let a = m(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 4]]);
        // cofactor expansion along the second row: -1 * (2*4 - 1*1)
        assert_eq!(a.det().unwrap(), BigInt::from(-7));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det().unwrap(), BigInt::zero());
    }

    #[test]
    fn det_rejects_rectangular() {
        assert!(matches!(
            IntMatrix::zeros(2, 3).det(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn char_poly_examples() {
        let p = m(&[&[2, 1], &[1, 1]]).char_poly().unwrap();
        assert_eq!(p, IntPolynomial::from_i64(&[1, -3, 1]));
        assert_eq!(IntMatrix::zeros(2, 2).char_poly().unwrap(), IntPolynomial::from_i64(&[0, 0, 1]));
        assert_eq!(m(&[&[-2]]).char_poly().unwrap(), IntPolynomial::from_i64(&[2, 1]));
    }

    #[test]
    fn exterior_power_examples() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.exterior_power(0).unwrap(), IntMatrix::identity(1));
        assert_eq!(a.exterior_power(1).unwrap(), a);
        assert_eq!(a.exterior_power(2).unwrap(), m(&[&[1]]));
        assert!(matches!(a.exterior_power(3), Err(Error::BadIndex(_))));
    }

    #[test]
    fn exterior_power_index_order() {
        // subsets {0,1},{0,2},{1,2}
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        let w = a.exterior_power(2).unwrap();
        assert_eq!(w[(0, 0)], BigInt::from(1 * 5 - 2 * 4));
        assert_eq!(w[(0, 2)], BigInt::from(2 * 6 - 3 * 5));
        assert_eq!(w[(2, 1)], BigInt::from(4 * 10 - 6 * 7));
    }

    #[test]
    fn kron_and_pow() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.kron(&m(&[&[1]])), a);
        assert_eq!(m(&[&[1]]).kron(&a), a);
        assert_eq!(m(&[&[2]]).kron(&m(&[&[3]])).trace(), BigInt::from(6));
        assert_eq!(a.pow(1).unwrap(), a);
        assert_eq!(a.pow(0).unwrap(), IntMatrix::identity(2));
        assert_eq!(m(&[&[-2]]).pow(3).unwrap(), m(&[&[-8]]));
    }

    #[test]
    fn unimodular_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), IntMatrix::identity(2));
        assert!(m(&[&[2]]).inverse_unimodular().is_err());
    }

    #[test]
    fn empty_matrix_conventions() {
        let e = IntMatrix::zeros(0, 0);
        assert_eq!(e.det().unwrap(), BigInt::one());
        assert_eq!(e.exterior_power(0).unwrap(), IntMatrix::identity(1));
        assert_eq!(e.char_poly().unwrap(), IntPolynomial::one());
    }
}
