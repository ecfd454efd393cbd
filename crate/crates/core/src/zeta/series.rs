//! Truncated power series over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntPolynomial;
use crate::reidemeister::{r_product, r_product_oracle, ProductEndomorphism};
use crate::zeta::FactoredRationalFunction;

/// `sum_{n=0}^{N} c_n z^n`, all coefficients stored explicitly.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coefficients: Vec<BigRational>,
}

fn q(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl TruncatedSeries {
    pub fn new(mut coefficients: Vec<BigRational>) -> Self {
        if coefficients.is_empty() {
            coefficients.push(BigRational::zero());
        }
        Self { coefficients }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigRational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coefficients[0] = BigRational::one();
        s
    }

    pub fn from_poly(p: &IntPolynomial, order: usize) -> Self {
        Self::new((0..=order).map(|i| BigRational::from_integer(p.coeff(i))).collect())
    }

    pub fn from_integers(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coefficients[n]
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|i| &self.coefficients[i] + &other.coefficients[i]).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coefficients.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coefficients.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        let mut c: Vec<BigRational> = self
            .coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| x * q(i))
            .collect();
        // keep the order; the top coefficient is unknown past truncation
        c.truncate(self.order());
        Self::new(c)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Self {
        let c0 = &self.coefficients[0];
        assert!(!c0.is_zero(), "series with zero constant term has no inverse");
        let n = self.order();
        let mut inv = vec![BigRational::zero(); n + 1];
        inv[0] = c0.recip();
        for k in 1..=n {
            let s: BigRational = (1..=k).map(|j| &self.coefficients[j] * &inv[k - j]).sum();
            inv[k] = -s / c0;
        }
        Self::new(inv)
    }

    /// `log f` for `f(0) = 1`, via `(log f)' = f'/f`.
    pub fn log(&self) -> Self {
        assert!(self.coefficients[0].is_one(), "log needs constant term 1");
        let n = self.order();
        let ratio = self.derivative().mul(&self.inverse());
        let mut out = vec![BigRational::zero(); n + 1];
        for k in 1..=n {
            out[k] = ratio.coefficients[k - 1].clone() / q(k);
        }
        Self::new(out)
    }

    /// `exp g` for `g(0) = 0`, from `n e_n = sum_{k=1}^{n} k g_k e_{n-k}`.
    pub fn exp(&self) -> Self {
        assert!(self.coefficients[0].is_zero(), "exp needs constant term 0");
        let n = self.order();
        let mut e = vec![BigRational::zero(); n + 1];
        e[0] = BigRational::one();
        for m in 1..=n {
            let s: BigRational = (1..=m)
                .map(|k| &self.coefficients[k] * q(k) * &e[m - k])
                .sum();
            e[m] = s / q(m);
        }
        Self::new(e)
    }

    /// Coefficients of `z (d/dz) log f`: for a zeta function these are the
    /// counts `a_1, a_2, ...` with `f = exp(sum a_n z^n / n)`.
    pub fn log_derivative_counts(&self) -> Vec<BigRational> {
        let l = self.log();
        (1..=self.order()).map(|n| &l.coefficients[n] * q(n)).collect()
    }

    /// `exp(sum_{n>=1} a_n z^n / n)`, the zeta function of a count sequence.
    pub fn zeta_of_counts(counts: &[BigInt]) -> Self {
        let mut g = vec![BigRational::zero(); counts.len() + 1];
        for (i, a) in counts.iter().enumerate() {
            g[i + 1] = BigRational::from_integer(a.clone()) / q(i + 1);
        }
        Self::new(g).exp()
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})z"),
                _ => format!("({c})z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", terms.join(" + "))?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// Expands `prod poly^e` to order `n` by summing `e · log(poly)` and
/// exponentiating.
pub fn expand_rational(f: &FactoredRationalFunction, order: usize) -> TruncatedSeries {
    let log = f.factors().iter().fold(TruncatedSeries::zero(order), |acc, factor| {
        let l = TruncatedSeries::from_poly(&factor.poly, order).log();
        acc.add(&l.scale(&BigRational::from_integer(BigInt::from(factor.exponent))))
    });
    log.exp()
}

/// Reidemeister counts `R(phi^1) .. R(phi^N)` with their series.
#[derive(Clone, Debug)]
pub struct ZetaSeries {
    pub counts: Vec<BigInt>,
    pub series: TruncatedSeries,
    /// Iterates whose count was also confirmed by the coset oracle.
    pub oracle_checked: Vec<u32>,
}

/// The defining series `exp(sum R(phi^n) z^n / n)` built from counted
/// Reidemeister numbers. Wherever the coset enumeration is small enough
/// the count is confirmed by [`r_product_oracle`] as well.
pub fn zeta_series_oracle(p: &ProductEndomorphism, order: usize) -> Result<ZetaSeries> {
    let mut counts = Vec::with_capacity(order);
    let mut oracle_checked = Vec::new();
    for n in 1..=order as u32 {
        let r = r_product(p, n)?;
        match r_product_oracle(p, n) {
            Ok(o) if o == r => oracle_checked.push(n),
            Ok(o) => {
                return Err(Error::OracleDisagreement(format!(
                    "R(phi^{n}): product formula {r}, coset oracle {o}"
                )))
            }
            Err(Error::OracleTooLarge(_)) => {}
            Err(e) => return Err(e),
        }
        counts.push(r);
    }
    let series = TruncatedSeries::zeta_of_counts(&counts);
    Ok(ZetaSeries {
        counts,
        series,
        oracle_checked,
    })
}
