use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fox::{free_reduce, FreeWord, GroupRingElement, GroupRingMatrix};

/// Endomorphism of the free group on `rank` generators, given by the
/// images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGroupEndo {
    rank: u32,
    images: Vec<FreeWord>,
}

impl FreeGroupEndo {
    pub fn new(rank: u32, images: Vec<FreeWord>) -> Result<Self> {
        if rank > 26 {
            return Err(Error::BadWord(format!("rank {rank} exceeds the 26 available letters")));
        }
        if images.len() != rank as usize {
            return Err(Error::Shape(format!("{} images for rank {rank}", images.len())));
        }
        if let Some(w) = images.iter().find(|w| w.max_generator() > rank) {
            return Err(Error::BadWord(format!("image {w} uses a generator beyond rank {rank}")));
        }
        Ok(Self { rank, images })
    }

    /// Parses images in the letter syntax, e.g. `["ab", "a"]`.
    pub fn parse(rank: u32, images: &[&str]) -> Result<Self> {
        let words = images.iter().map(|s| FreeWord::parse(s)).collect::<Result<_>>()?;
        Self::new(rank, words)
    }

    pub fn identity(rank: u32) -> Self {
        Self {
            rank,
            images: (1..=rank).map(FreeWord::generator).collect(),
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        free_reduce(w.letters().iter().flat_map(|l| {
            let img = &self.images[(l.generator - 1) as usize];
            let letters: Vec<_> = if l.inverse {
                img.inverse().letters().to_vec()
            } else {
                img.letters().to_vec()
            };
            letters
        }))
    }

    /// The induced ring endomorphism of the group ring.
    pub fn apply_ring(&self, x: &GroupRingElement) -> GroupRingElement {
        x.map_words(|w| self.apply(w))
    }

    pub fn apply_matrix(&self, a: &GroupRingMatrix) -> GroupRingMatrix {
        a.map_entries(|x| self.apply_ring(x))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::Shape(format!("ranks {} and {} differ", self.rank, other.rank)));
        }
        Ok(Self {
            rank: self.rank,
            images: other.images.iter().map(|w| self.apply(w)).collect(),
        })
    }
}

impl fmt::Display for FreeGroupEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -> {w}", FreeWord::generator(i as u32 + 1))?;
        }
        Ok(())
    }
}

/// Fox partial derivative `∂w/∂a_j`, with `j` counted from 1.
///
/// An occurrence of `a_j` contributes the prefix before it; an occurrence
/// of `a_j^-1` contributes minus the prefix up to and including it.
pub fn fox_derivative(w: &FreeWord, j: u32) -> GroupRingElement {
    let letters = w.letters();
    let mut out = GroupRingElement::zero();
    for (k, l) in letters.iter().enumerate() {
        if l.generator != j {
            continue;
        }
        if l.inverse {
            out.add_term(free_reduce(letters[..=k].iter().copied()), -BigInt::one());
        } else {
            out.add_term(free_reduce(letters[..k].iter().copied()), BigInt::one());
        }
    }
    out
}

/// `D = (∂b_i/∂a_j)` where `b_i` is the image of `a_i`.
pub fn jacobian(phi: &FreeGroupEndo) -> GroupRingMatrix {
    let r = phi.rank as usize;
    let mut d = GroupRingMatrix::zeros(r, r);
    for (i, b) in phi.images.iter().enumerate() {
        for j in 0..r {
            d.set(i, j, fox_derivative(b, j as u32 + 1));
        }
    }
    d
}

/// Product `φ^(n-1)(A) ⋯ φ(A) A`, the coefficient of `z^n` in `(zA)^n`
/// under the relation `g z = z φ(g)`.
pub fn twisted_power(phi: &FreeGroupEndo, a: &GroupRingMatrix, n: u32) -> Result<GroupRingMatrix> {
    if a.rows() != a.cols() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if n == 0 {
        return Ok(GroupRingMatrix::identity(a.rows()));
    }
    let mut acc = a.clone();
    for _ in 1..n {
        acc = phi.apply_matrix(&acc).mul(a)?;
    }
    Ok(acc)
}

/// `‖(zA)^n‖`.
pub fn twisted_power_norm(phi: &FreeGroupEndo, a: &GroupRingMatrix, n: u32) -> Result<BigInt> {
    Ok(twisted_power(phi, a, n)?.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fox::{matrix_norm, matrix_of_norms};
    use crate::linalg::IntMatrix;

    fn w(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    fn el(terms: &[(i64, &str)]) -> GroupRingElement {
        let mut x = GroupRingElement::zero();
        for &(c, s) in terms {
            x.add_term(w(s), BigInt::from(c));
        }
        x
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(fox_derivative(&w("ab"), 1), el(&[(1, "1")]));
        assert_eq!(fox_derivative(&w("A"), 1), el(&[(-1, "A")]));
        assert_eq!(fox_derivative(&w("abA"), 1), el(&[(1, "1"), (-1, "abA")]));
        assert_eq!(fox_derivative(&w("abA"), 2), el(&[(1, "a")]));
        assert!(fox_derivative(&w("b"), 1).is_zero());
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(jacobian(&FreeGroupEndo::identity(3)), GroupRingMatrix::identity(3));
        let d = jacobian(&FreeGroupEndo::parse(2, &["ab", "a"]).unwrap());
        assert_eq!(d.get(0, 0), &el(&[(1, "1")]));
        assert_eq!(d.get(0, 1), &el(&[(1, "a")]));
        assert_eq!(d.get(1, 0), &el(&[(1, "1")]));
        assert!(d.get(1, 1).is_zero());
        assert_eq!(matrix_norm(&d), BigInt::from(3));
        assert_eq!(matrix_of_norms(&d), IntMatrix::from_i64(&[&[1, 1], &[1, 0]]));
        let swap = jacobian(&FreeGroupEndo::parse(2, &["b", "a"]).unwrap());
        assert_eq!(matrix_of_norms(&swap), IntMatrix::from_i64(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn twisted_powers() {
        let phi = FreeGroupEndo::parse(2, &["ab", "a"]).unwrap();
        let d = jacobian(&phi);
        assert_eq!(twisted_power_norm(&phi, &d, 1).unwrap(), BigInt::from(3));
        // φ(D) = [[1, ab], [1, 0]], φ(D)·D = [[1 + ab, a], [1, a]]
        let p2 = twisted_power(&phi, &d, 2).unwrap();
        assert_eq!(p2.get(0, 0), &el(&[(1, "1"), (1, "ab")]));
        assert_eq!(p2.get(0, 1), &el(&[(1, "a")]));
        assert_eq!(p2.get(1, 1), &el(&[(1, "a")]));
        assert_eq!(twisted_power_norm(&phi, &d, 2).unwrap(), BigInt::from(5));
        let id = GroupRingMatrix::identity(2);
        for n in 1..6 {
            assert_eq!(twisted_power_norm(&phi, &id, n).unwrap(), BigInt::from(2));
        }
    }

    #[test]
    fn endo_application() {
        let phi = FreeGroupEndo::parse(2, &["ab", "a"]).unwrap();
        assert_eq!(phi.apply(&w("aB")), w("abA"));
        assert_eq!(phi.compose(&phi).unwrap().images(), &[w("aba"), w("ab")]);
        assert!(FreeGroupEndo::parse(2, &["c", "a"]).is_err());
        assert!(FreeGroupEndo::parse(2, &["a"]).is_err());
    }
}
