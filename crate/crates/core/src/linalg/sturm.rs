//! Exact real-root counting with Sturm sequences over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntPolynomial};

/// Dense rational polynomial used only inside the Sturm machinery.
#[derive(Clone, Debug, PartialEq)]
struct RatPoly(Vec<BigRational>);

impl RatPoly {
    fn from_int(p: &IntPolynomial) -> Self {
        Self(p.to_rational_coeffs()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    fn derivative(&self) -> Self {
        Self(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
        .trimmed()
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        if self.0.len() < d.0.len() {
            return (Self(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.0.len() - d.0.len() + 1];
        let dl = d.lead().clone();
        for shift in (0..quot.len()).rev() {
            let c = &rem[shift + d.degree()] / &dl;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.0.iter().enumerate() {
                rem[shift + i] -= &c * dc;
            }
            quot[shift] = c;
        }
        (Self(quot).trimmed(), Self(rem).trimmed())
    }

    fn monic(&self) -> Self {
        let l = self.lead().clone();
        Self(self.0.iter().map(|c| c / &l).collect())
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }
}

#[derive(Clone, Copy)]
enum Point<'a> {
    NegInf,
    PosInf,
    At(&'a BigRational),
}

fn sign_at(p: &RatPoly, x: Point<'_>) -> i32 {
    let v = match x {
        Point::At(x) => p.eval(x),
        Point::PosInf => p.lead().clone(),
        Point::NegInf => {
            if p.degree() % 2 == 0 {
                p.lead().clone()
            } else {
                -p.lead().clone()
            }
        }
    };
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        chain.push(r.neg());
    }
    chain.pop();
    chain
}

fn variations(chain: &[RatPoly], x: Point<'_>) -> usize {
    let signs: Vec<i32> = chain
        .iter()
        .map(|p| sign_at(p, x))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots of a square-free `p` in `(a, b]`.
fn count_distinct(p: &RatPoly, a: Point<'_>, b: Point<'_>) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let chain = sturm_chain(p);
    variations(&chain, a) - variations(&chain, b)
}

/// Real-eigenvalue counts used by the sign of `det(I - M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EigenSigns {
    /// Eigenvalues in `(-inf, -1)`, with multiplicity.
    pub p: usize,
    /// Real eigenvalues with `|mu| > 1`, with multiplicity.
    pub r: usize,
}

impl EigenSigns {
    /// `(-1)^p`.
    pub fn sigma(&self) -> i32 {
        if self.p % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Counts, with algebraic multiplicity, the real roots of `poly` below
/// `-1` and above `+1`. Errors if `+-1` is itself a root.
pub fn count_root_signs(poly: &IntPolynomial) -> Result<EigenSigns> {
    for b in [-1i64, 1] {
        if poly.eval(&BigInt::from(b)).is_zero() {
            return Err(Error::EigenvalueOnBoundary(b));
        }
    }
    let minus_one = -BigRational::one();
    let one = BigRational::one();
    let mut p = 0;
    let mut r_pos = 0;
    // f_1 = f, f_{j+1} = gcd(f_j, f_j'); roots of f_j are the roots of f
    // of multiplicity >= j, so summing distinct counts recovers multiplicity.
    let mut f = RatPoly::from_int(poly);
    while f.degree() > 0 {
        let g = f.gcd(&f.derivative());
        let (squarefree, _) = f.div_rem(&g);
        p += count_distinct(&squarefree, Point::NegInf, Point::At(&minus_one));
        r_pos += count_distinct(&squarefree, Point::At(&one), Point::PosInf);
        f = g;
    }
    Ok(EigenSigns { p, r: p + r_pos })
}

/// Sign constants of an integer matrix: `p` eigenvalues below `-1` and
/// `r` real eigenvalues of modulus above 1, both with multiplicity.
pub fn count_eigen_signs(m: &IntMatrix) -> Result<EigenSigns> {
    count_root_signs(&m.char_poly()?)
}
