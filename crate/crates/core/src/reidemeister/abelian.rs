use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{count_eigen_signs, smith_normal_form, EigenSigns, IntMatrix};

/// `(-1)^e` as an integer.
pub(crate) fn parity_sign(e: usize) -> BigInt {
    if e % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// `sum_i (-1)^i Tr(∧^i a)`, which equals `det(I - a)`.
pub fn alternating_exterior_trace(a: &IntMatrix) -> Result<BigInt> {
    let mut sum = BigInt::zero();
    for i in 0..=a.rows() {
        sum += parity_sign(i) * a.exterior_power(i)?.trace();
    }
    Ok(sum)
}

/// `R(M) = |det(I - M)|` on `Z^k`.
pub fn r_abelian(m: &IntMatrix) -> Result<BigInt> {
    let d = m.one_minus()?.det()?;
    if d.is_zero() {
        return Err(Error::InfiniteReidemeister { n: 1 });
    }
    Ok(d.abs())
}

/// Signed alternating exterior trace `(-1)^(r+p) sum_i (-1)^i Tr(∧^i M)`.
pub fn r_abelian_trace(m: &IntMatrix) -> Result<BigInt> {
    let EigenSigns { p, r } = count_eigen_signs(m)?;
    let value = parity_sign(r + p) * alternating_exterior_trace(m)?;
    if value.is_zero() {
        return Err(Error::InfiniteReidemeister { n: 1 });
    }
    Ok(value)
}

/// Order of `Z^k / (I - M) Z^k` from the Smith diagonal.
pub fn coset_count(m: &IntMatrix) -> Result<BigInt> {
    let a = m.one_minus()?;
    smith_normal_form(&a)
        .cokernel_order(a.rows())
        .ok_or(Error::InfiniteReidemeister { n: 1 })
}
