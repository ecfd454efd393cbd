use num_bigint::BigInt;
use num_traits::ToPrimitive;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rzeta::fox::{self, FreeGroupEndo, FreeWord};
use rzeta::linalg::{count_eigen_signs, smith_normal_form, IntMatrix};
use rzeta::problem::{self, ProblemError, Scope};
use rzeta::reidemeister::{coset_count, r_abelian, r_abelian_trace, ProductEndomorphism};
use rzeta::zeta::{functional_equation_check, zeta_product};

create_exception!(pyrzeta, RzetaError, PyValueError, "Invalid input or failed computation.");
create_exception!(pyrzeta, InfiniteReidemeisterError, RzetaError, "Some iterate has infinitely many classes.");
create_exception!(pyrzeta, OracleDisagreementError, RzetaError, "Two independent routes disagree.");

fn to_py(e: rzeta::Error) -> PyErr {
    match e {
        rzeta::Error::InfiniteReidemeister { .. } | rzeta::Error::EigenvalueOnBoundary(_) => {
            InfiniteReidemeisterError::new_err(e.to_string())
        }
        rzeta::Error::OracleDisagreement(_) => OracleDisagreementError::new_err(e.to_string()),
        _ => RzetaError::new_err(e.to_string()),
    }
}

fn problem_to_py(e: ProblemError) -> PyErr {
    match e.exit_code() {
        3 => InfiniteReidemeisterError::new_err(e.to_string()),
        4 => OracleDisagreementError::new_err(e.to_string()),
        _ => RzetaError::new_err(e.to_string()),
    }
}

/// Square integer matrix acting on `Z^k`.
#[pyclass(name = "Matrix", frozen)]
struct PyMatrix {
    inner: IntMatrix,
}

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(rows: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let inner = IntMatrix::from_rows(&rows).map_err(to_py)?;
        if !inner.is_square() {
            return Err(RzetaError::new_err("matrix must be square"));
        }
        Ok(Self { inner })
    }

    fn rows(&self) -> Vec<Vec<BigInt>> {
        self.inner.to_rows()
    }

    fn det(&self) -> PyResult<BigInt> {
        self.inner.det().map_err(to_py)
    }

    /// Coefficients of `det(xI - M)`, constant term first.
    fn char_poly(&self) -> PyResult<Vec<BigInt>> {
        Ok(self.inner.char_poly().map_err(to_py)?.coeffs().to_vec())
    }

    fn smith_diagonal(&self) -> Vec<BigInt> {
        smith_normal_form(&self.inner).diagonal
    }

    fn exterior_power(&self, i: usize) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.exterior_power(i).map_err(to_py)?,
        })
    }

    fn pow(&self, n: u32) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.pow(n).map_err(to_py)?,
        })
    }

    /// Real eigenvalue counts `(p, r)`: `p` below -1, `r` with absolute value above 1.
    fn eigen_signs(&self) -> PyResult<(usize, usize)> {
        let s = count_eigen_signs(&self.inner).map_err(to_py)?;
        Ok((s.p, s.r))
    }

    /// Reidemeister number of the n-th iterate, `|det(I - M^n)|`.
    #[pyo3(signature = (n = 1))]
    fn reidemeister(&self, n: u32) -> PyResult<BigInt> {
        r_abelian(&self.inner.pow(n).map_err(to_py)?).map_err(to_py)
    }

    /// The same number by determinant, coset count and alternating trace.
    #[pyo3(signature = (n = 1))]
    fn reidemeister_routes(&self, n: u32) -> PyResult<(BigInt, BigInt, BigInt)> {
        let m = self.inner.pow(n).map_err(to_py)?;
        Ok((
            r_abelian(&m).map_err(to_py)?,
            coset_count(&m).map_err(to_py)?,
            r_abelian_trace(&m).map_err(to_py)?,
        ))
    }

    /// Zeta function as a list of `{"coeffs": [...], "exp": e}` factors.
    fn zeta<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let p = ProductEndomorphism::abelian(self.inner.clone()).map_err(to_py)?;
        let z = zeta_product(&p).map_err(to_py)?;
        z.factors()
            .iter()
            .map(|f| {
                let d = PyDict::new(py);
                d.set_item("coeffs", f.poly.coeffs().to_vec())?;
                d.set_item("exp", f.exponent)?;
                Ok(d)
            })
            .collect()
    }

    /// `(epsilon, exponent)` relating `zeta(1/(dz))` to `zeta(z)`; epsilon as a string.
    fn functional_equation(&self) -> PyResult<(String, i32)> {
        let f = functional_equation_check(&self.inner).map_err(to_py)?;
        Ok((f.epsilon.to_string(), f.exponent))
    }

    fn __repr__(&self) -> String {
        format!("Matrix({})", self.inner)
    }
}

/// Endomorphism of a free group, generators `a..z`, inverses `A..Z`.
#[pyclass(name = "FreeEndomorphism", frozen)]
struct PyFreeEndo {
    inner: FreeGroupEndo,
}

#[pymethods]
impl PyFreeEndo {
    #[new]
    fn new(rank: u32, images: Vec<String>) -> PyResult<Self> {
        let refs: Vec<&str> = images.iter().map(String::as_str).collect();
        Ok(Self {
            inner: FreeGroupEndo::parse(rank, &refs).map_err(to_py)?,
        })
    }

    #[getter]
    fn rank(&self) -> u32 {
        self.inner.rank()
    }

    fn images(&self) -> Vec<String> {
        self.inner.images().iter().map(ToString::to_string).collect()
    }

    fn apply(&self, word: &str) -> PyResult<String> {
        let w: FreeWord = word.parse().map_err(to_py)?;
        Ok(self.inner.apply(&w).to_string())
    }

    /// Fox Jacobian, entries printed as group ring elements.
    fn jacobian(&self) -> Vec<Vec<String>> {
        let d = fox::jacobian(&self.inner);
        (0..d.rows())
            .map(|i| (0..d.cols()).map(|j| d.get(i, j).to_string()).collect())
            .collect()
    }

    /// Norm of the n-th twisted power of the Jacobian.
    fn twisted_norm(&self, n: u32) -> PyResult<BigInt> {
        fox::twisted_power_norm(&self.inner, &fox::jacobian(&self.inner), n).map_err(to_py)
    }

    /// Lower bounds for the radius of convergence of the Nielsen zeta function.
    fn bounds<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let b = fox::nielsen_radius_bounds(&self.inner).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("bound_norm", b.bound_norm.to_string())?;
        d.set_item("bound_norm_float", b.bound_norm.to_f64())?;
        d.set_item("bound_spectral", b.bound_spectral)?;
        d.set_item("spectral_enclosure", b.spectral_enclosure)?;
        d.set_item("max_norm", b.max_norm)?;
        d.set_item("max_spectral", b.max_spectral.value)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("FreeEndomorphism({})", self.inner)
    }
}

#[pyfunction]
fn fox_derivative(word: &str, j: u32) -> PyResult<String> {
    let w: FreeWord = word.parse().map_err(to_py)?;
    Ok(fox::fox_derivative(&w, j).to_string())
}

/// Validates a problem document and returns its canonical JSON.
#[pyfunction]
#[pyo3(signature = (document, max_group_order = None))]
fn check(document: &str, max_group_order: Option<usize>) -> PyResult<String> {
    let cap = max_group_order.unwrap_or(rzeta::group::DEFAULT_ORDER_CAP);
    let p = problem::parse_problem_with_cap(document, cap).map_err(problem_to_py)?;
    Ok(p.document.to_canonical_json())
}

/// Runs a problem document and returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (document, scope = "full", max_group_order = None))]
fn run(document: &str, scope: &str, max_group_order: Option<usize>) -> PyResult<String> {
    let scope = match scope {
        "full" | "compute" => Scope::Full,
        "zeta" => Scope::Zeta,
        "bounds" => Scope::Bounds,
        "torsion" => Scope::Torsion,
        other => return Err(RzetaError::new_err(format!("unknown scope {other:?}"))),
    };
    let cap = max_group_order.unwrap_or(rzeta::group::DEFAULT_ORDER_CAP);
    let p = problem::parse_problem_with_cap(document, cap).map_err(problem_to_py)?;
    let report = problem::run(&p, scope).map_err(problem_to_py)?;
    Ok(report.to_json())
}

#[pymodule]
fn pyrzeta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyFreeEndo>()?;
    m.add_function(wrap_pyfunction!(fox_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("RzetaError", m.py().get_type::<RzetaError>())?;
    m.add("InfiniteReidemeisterError", m.py().get_type::<InfiniteReidemeisterError>())?;
    m.add("OracleDisagreementError", m.py().get_type::<OracleDisagreementError>())?;
    Ok(())
}
