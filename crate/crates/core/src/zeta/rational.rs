use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{count_eigen_signs, EigenSigns, IntMatrix, IntPolynomial};
use crate::reidemeister::{class_function_matrix, ProductEndomorphism};

/// Smallest `|factor|` accepted when evaluating numerically.
pub const POLE_GUARD: f64 = 1e-6;

/// One factor `poly(z)^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: IntPolynomial,
    pub exponent: i32,
}

/// Sign constants behind a zeta function: `sigma = (-1)^p`, outer
/// exponent `(-1)^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignConvention {
    pub p: usize,
    pub r: usize,
    pub sigma: i32,
}

impl From<EigenSigns> for SignConvention {
    fn from(s: EigenSigns) -> Self {
        Self {
            p: s.p,
            r: s.r,
            sigma: s.sigma(),
        }
    }
}

/// A rational function kept as a product of integer polynomials with
/// integer exponents. Every polynomial has constant term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRationalFunction {
    factors: Vec<Factor>,
    signs: Option<SignConvention>,
}

impl FactoredRationalFunction {
    /// Folds constant factors, merges repeated polynomials and drops zero
    /// exponents. Polynomials must have constant term 1.
    pub fn new(factors: impl IntoIterator<Item = Factor>, signs: Option<SignConvention>) -> Result<Self> {
        let mut merged: Vec<Factor> = Vec::new();
        for f in factors {
            if f.poly.constant_term() != BigInt::from(1) {
                return Err(Error::Shape(format!("factor {} does not have constant term 1", f.poly)));
            }
            if f.poly.is_one() || f.exponent == 0 {
                continue;
            }
            match merged.iter_mut().find(|m| m.poly == f.poly) {
                Some(m) => m.exponent += f.exponent,
                None => merged.push(f),
            }
        }
        merged.retain(|f| f.exponent != 0);
        Ok(Self {
            factors: merged,
            signs,
        })
    }

    pub fn one() -> Self {
        Self {
            factors: Vec::new(),
            signs: None,
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn signs(&self) -> Option<SignConvention> {
        self.signs
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Expanded numerator (positive exponents).
    pub fn numerator(&self) -> IntPolynomial {
        self.factors
            .iter()
            .filter(|f| f.exponent > 0)
            .fold(IntPolynomial::one(), |acc, f| acc.mul(&f.poly.pow(f.exponent as u32)))
    }

    /// Expanded denominator (negative exponents).
    pub fn denominator(&self) -> IntPolynomial {
        self.factors
            .iter()
            .filter(|f| f.exponent < 0)
            .fold(IntPolynomial::one(), |acc, f| acc.mul(&f.poly.pow(f.exponent.unsigned_abs())))
    }

    /// Evaluates at a complex point. Fails if any factor is within
    /// [`POLE_GUARD`] of zero there.
    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(1.0, 0.0);
        for f in &self.factors {
            let v = f.poly.eval_complex(z);
            if v.norm() < POLE_GUARD {
                return Err(Error::PoleAtEvaluation(v.norm()));
            }
            acc *= v.powi(f.exponent);
        }
        Ok(acc)
    }
}

impl fmt::Display for FactoredRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| {
                if x.exponent == 1 {
                    format!("({})", x.poly)
                } else {
                    format!("({})^{}", x.poly, x.exponent)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `det(I - X z)` as a polynomial in `z`: the reversed characteristic
/// polynomial of `X`.
pub fn det_one_minus_xz(x: &IntMatrix) -> Result<IntPolynomial> {
    let chi = x.char_poly()?;
    let m = x.rows();
    Ok(IntPolynomial::new((0..=m).map(|j| chi.coeff(m - j)).collect()))
}

fn sign_pow(e: usize) -> i32 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `prod_k det(I - A_k z)^((-1)^(k+1))` over homology degrees `k`.
pub fn lefschetz_zeta(matrices: &[IntMatrix]) -> Result<FactoredRationalFunction> {
    let factors = matrices
        .iter()
        .enumerate()
        .map(|(k, a)| {
            Ok(Factor {
                poly: det_one_minus_xz(a)?,
                exponent: sign_pow(k + 1),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    FactoredRationalFunction::new(factors, None)
}

/// Closed form of the Reidemeister zeta function of `Z^k × F`, without
/// checking that every iterate has finitely many classes:
/// `(prod_i det(I - (∧^i M ⊗ B) σ z)^((-1)^(i+1)))^((-1)^r)`.
pub fn zeta_formal(p: &ProductEndomorphism) -> Result<FactoredRationalFunction> {
    let signs = SignConvention::from(count_eigen_signs(p.matrix())?);
    let b = class_function_matrix(p.finite_group(), p.phi_f()).matrix;
    let sigma = BigInt::from(signs.sigma);
    let outer = sign_pow(signs.r);
    let factors = (0..=p.rank())
        .map(|i| {
            let x = p.matrix().exterior_power(i)?.kron(&b).scale(&sigma);
            Ok(Factor {
                poly: det_one_minus_xz(&x)?,
                exponent: sign_pow(i + 1) * outer,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    FactoredRationalFunction::new(factors, Some(signs))
}

fn totient(mut n: usize) -> usize {
    let mut result = n;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            while n % q == 0 {
                n /= q;
            }
            result -= result / q;
        }
        q += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Checks `det(I - M^n) != 0` for every `n`. A zero can only come from a
/// root-of-unity eigenvalue, whose order `m` satisfies `totient(m) <= k`,
/// and `totient(m) >= sqrt(m / 2)` bounds the search.
pub fn ensure_finite_iterates(m: &IntMatrix) -> Result<()> {
    let k = m.rows();
    for n in 1..=(2 * k * k + 2) {
        if totient(n) > k {
            continue;
        }
        if m.pow(n as u32)?.one_minus()?.det()? == BigInt::from(0) {
            return Err(Error::InfiniteReidemeister { n: n as u32 });
        }
    }
    Ok(())
}

/// Reidemeister zeta function in closed form. Requires every iterate to
/// have a finite Reidemeister number and no eigenvalue of `M` at `±1`.
pub fn zeta_product(p: &ProductEndomorphism) -> Result<FactoredRationalFunction> {
    count_eigen_signs(p.matrix())?;
    ensure_finite_iterates(p.matrix())?;
    zeta_formal(p)
}
