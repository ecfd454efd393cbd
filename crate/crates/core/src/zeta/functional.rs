use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntPolynomial};
use crate::reidemeister::ProductEndomorphism;
use crate::zeta::zeta_formal;

/// Outcome of the duality check `R(1/(d z)) = eps · R(z)^((-1)^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalEquation {
    pub epsilon: BigRational,
    /// `(-1)^k` for a lattice of rank `k`.
    pub exponent: i32,
    pub determinant: BigInt,
}

/// `P(1/(d z)) = (d z)^(-m) Q(z)` with `Q_i = c_(m-i) d^i`.
fn substitute_reciprocal(p: &IntPolynomial, d: &BigInt) -> (IntPolynomial, usize) {
    let m = p.degree().unwrap_or(0);
    let coeffs = (0..=m).map(|i| p.coeff(m - i) * d.pow(i as u32)).collect();
    (IntPolynomial::new(coeffs), m)
}

fn rational_pow(base: &BigInt, e: i64) -> BigRational {
    let mag = BigRational::from_integer(base.pow(e.unsigned_abs() as u32));
    if e >= 0 {
        mag
    } else {
        mag.recip()
    }
}

/// Forms `R(1/(d z)) · R(z)^(-(-1)^k)` symbolically for the lattice map `M`
/// and checks that it is a constant. `d = det M`.
pub fn functional_equation_check(m: &IntMatrix) -> Result<FunctionalEquation> {
    let d = m.det()?;
    if d.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    let k = m.rows();
    let zeta = zeta_formal(&ProductEndomorphism::abelian(m.clone())?)?;
    let exponent = if k % 2 == 0 { 1 } else { -1 };

    let mut numerator = IntPolynomial::one();
    let mut denominator = IntPolynomial::one();
    let mut constant = BigRational::one();
    let mut z_power: i64 = 0;
    let mut absorb = |poly: &IntPolynomial, e: i32| {
        let p = poly.pow(e.unsigned_abs());
        if e > 0 {
            numerator = numerator.mul(&p);
        } else {
            denominator = denominator.mul(&p);
        }
    };
    for f in zeta.factors() {
        let (q, deg) = substitute_reciprocal(&f.poly, &d);
        absorb(&q, f.exponent);
        let shift = -(deg as i64) * i64::from(f.exponent);
        constant *= rational_pow(&d, shift);
        z_power += shift;
    }
    for f in zeta.factors() {
        absorb(&f.poly, -exponent * f.exponent);
    }

    let (Some(ln), Some(ld)) = (numerator.leading().cloned(), denominator.leading().cloned()) else {
        return Err(Error::NotConstant("zero polynomial in the ratio".into()));
    };
    if z_power != 0 || numerator.scale(&ld) != denominator.scale(&ln) {
        return Err(Error::NotConstant(format!(
            "z^{z_power} · ({numerator}) / ({denominator})"
        )));
    }
    Ok(FunctionalEquation {
        epsilon: constant * BigRational::new(ln, ld),
        exponent,
        determinant: d,
    })
}
