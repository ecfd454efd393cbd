//! Reidemeister torsion of the mapping torus of the dual map, evaluated
//! two ways: from the Reidemeister zeta function at `sigma * lambda`, and
//! from the Lefschetz determinants of the dual homology action at `lambda`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::reidemeister::{class_function_matrix, ProductEndomorphism};
use crate::zeta::{zeta_product, POLE_GUARD};

/// Relative agreement demanded between the two routes.
pub const TORSION_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct TorsionValue {
    /// `|R(sigma lambda)|^((-1)^(r+1))`.
    pub from_zeta: f64,
    /// `|L(lambda)|^-1` from the dual homology matrices.
    pub from_lefschetz: f64,
}

impl TorsionValue {
    pub fn relative_error(&self) -> f64 {
        (self.from_zeta - self.from_lefschetz).abs() / self.from_zeta.abs().max(self.from_lefschetz.abs())
    }
}

/// `lambda = exp(2 pi i t)`.
pub fn unit_from_angle(t: &BigRational) -> Complex64 {
    let frac = t.numer().mod_floor(t.denom());
    let x = frac.to_f64().unwrap_or(f64::NAN) / t.denom().to_f64().unwrap_or(f64::NAN);
    Complex64::from_polar(1.0, TAU * x)
}

/// Homology action of the dual map in each degree: `∧^i M^T ⊗ B^T`.
pub fn dual_homology_matrices(p: &ProductEndomorphism) -> Result<Vec<IntMatrix>> {
    let bt = class_function_matrix(p.finite_group(), p.phi_f()).matrix.transpose();
    let mt = p.matrix().transpose();
    (0..=p.rank())
        .map(|i| Ok(mt.exterior_power(i)?.kron(&bt)))
        .collect()
}

/// Complex determinant by Gaussian elimination with partial pivoting.
pub(crate) fn complex_det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))
            .expect("non-empty range");
        if a[pivot][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != k {
            a.swap(pivot, k);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let factor = a[i][k] / a[k][k];
            for j in k..n {
                let v = a[k][j];
                a[i][j] -= factor * v;
            }
        }
    }
    det
}

/// `det(I - lambda X)` over the complex numbers.
fn det_one_minus_scaled(x: &IntMatrix, lambda: Complex64) -> Complex64 {
    let n = x.rows();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = if i == j { 1.0 } else { 0.0 };
                    Complex64::new(id, 0.0) - lambda * x[(i, j)].to_f64().unwrap_or(f64::NAN)
                })
                .collect()
        })
        .collect();
    complex_det(rows)
}

/// `|L(lambda)|^-1 = prod_i |det(I - lambda X_i)|^((-1)^i)`.
pub fn lefschetz_torsion(matrices: &[IntMatrix], lambda: Complex64) -> Result<f64> {
    let mut log_tau = 0.0;
    for (i, x) in matrices.iter().enumerate() {
        let d = det_one_minus_scaled(x, lambda).norm();
        if d < POLE_GUARD {
            return Err(Error::PoleAtEvaluation(d));
        }
        log_tau += if i % 2 == 0 { d.ln() } else { -d.ln() };
    }
    Ok(log_tau.exp())
}

/// Torsion of the mapping torus at holonomy `lambda = exp(2 pi i t)`.
///
/// The lattice part must be nonsingular and the finite part bijective.
/// Both routes are evaluated and must agree to [`TORSION_TOLERANCE`].
pub fn torsion_special_value(p: &ProductEndomorphism, t: &BigRational) -> Result<TorsionValue> {
    if p.matrix().det()?.is_zero() {
        return Err(Error::NonInvertible("lattice part has determinant 0".into()));
    }
    if !p.phi_f().is_bijective() {
        return Err(Error::NonInvertible("finite part is not bijective".into()));
    }
    let zeta = zeta_product(p)?;
    let signs = zeta.signs().expect("zeta_product records its sign convention");
    let lambda = unit_from_angle(t);
    let value = zeta.eval_complex(lambda * f64::from(signs.sigma))?;
    let from_zeta = if signs.r % 2 == 1 {
        value.norm()
    } else {
        value.norm().recip()
    };
    let from_lefschetz = lefschetz_torsion(&dual_homology_matrices(p)?, lambda)?;
    let tv = TorsionValue {
        from_zeta,
        from_lefschetz,
    };
    if !(tv.relative_error() <= TORSION_TOLERANCE) {
        return Err(Error::OracleDisagreement(format!(
            "torsion at t = {t}: zeta route {from_zeta}, Lefschetz route {from_lefschetz}"
        )));
    }
    Ok(tv)
}
