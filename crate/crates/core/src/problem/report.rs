use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::fox::{jacobian, nielsen_radius_bounds, FreeGroupEndo, GroupRingMatrix};
use crate::group::{eventual_image, phi_conjugacy_classes};
use crate::linalg::IntMatrix;
use crate::problem::{Problem, ProblemDocument, ProblemError, System};
use crate::reidemeister::{coset_count, r_finite, r_product, r_product_oracle, r_product_trace, ProductEndomorphism};
use crate::zeta::{
    congruence_check, expand_rational, functional_equation_check, torsion_special_value, zeta_formal, zeta_product,
    FactoredRationalFunction, TruncatedSeries, POLE_GUARD, TORSION_TOLERANCE,
};

/// Which part of the computation to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Full,
    Zeta,
    Bounds,
    Torsion,
}

/// Arbitrary-precision integer, written as a JSON number when it fits in
/// an `i64` and as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountEntry {
    pub n: u32,
    pub value: Int,
    pub trace: Option<Int>,
    pub oracle: Option<Int>,
    pub agreement: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountsSection {
    pub formula: String,
    pub trace_formula: String,
    pub oracle: String,
    pub entries: Vec<CountEntry>,
    /// First iterate with infinitely many classes, if any was met.
    pub infinite_at: Option<u32>,
    pub notes: Vec<String>,
    pub agreement: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaFactor {
    pub coeffs: Vec<Int>,
    pub exp: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaSection {
    pub formula: String,
    pub oracle: String,
    pub factors: Vec<ZetaFactor>,
    pub display: String,
    pub p: usize,
    pub r: usize,
    pub sigma: i32,
    pub order: usize,
    /// Taylor coefficients of the closed form, as exact rationals.
    pub series: Vec<String>,
    pub agreement: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceSection {
    pub formula: String,
    pub oracle: String,
    pub residues: Vec<(usize, Int)>,
    pub agreement: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EventualImageSection {
    pub formula: String,
    pub oracle: String,
    pub image_order: usize,
    pub steps: usize,
    pub value: usize,
    pub oracle_value: usize,
    pub agreement: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctionalSection {
    pub formula: String,
    pub oracle: String,
    pub epsilon: String,
    pub exponent: i32,
    pub determinant: Int,
    /// Relative residual of the identity at a sample point.
    pub sample_residual: f64,
    pub agreement: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionEntry {
    pub angle: String,
    pub from_zeta: Option<f64>,
    pub from_lefschetz: Option<f64>,
    pub relative_error: Option<f64>,
    pub error: Option<String>,
    pub agreement: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionSection {
    pub formula: String,
    pub oracle: String,
    pub tolerance: f64,
    pub entries: Vec<TorsionEntry>,
    pub agreement: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistedNorm {
    pub n: u32,
    pub norm: Int,
    /// Sum of the entries of `(D^norm)^n`, which dominates the norm.
    pub bound: Int,
    pub root: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FoxSection {
    pub formula: String,
    pub oracle: String,
    pub jacobian: Vec<Vec<String>>,
    pub norm_matrix: Vec<Vec<Int>>,
    pub max_norm: Int,
    pub bound_norm: String,
    pub bound_norm_value: f64,
    pub spectral_radius: f64,
    pub spectral_bracket: (f64, f64),
    pub bound_spectral: f64,
    pub bound_spectral_enclosure: (f64, f64),
    pub twisted_norms: Vec<TwistedNorm>,
    pub agreement: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub kind: String,
    pub input: ProblemDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<CountsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ZetaSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub congruences: Option<CongruenceSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eventual_image: Option<EventualImageSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functional_equation: Option<FunctionalSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion: Option<TorsionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fox: Option<FoxSection>,
    pub notes: Vec<String>,
    pub infinite_reidemeister: bool,
    pub agreement: bool,
    pub timing_ms: BTreeMap<String, f64>,
}

impl Report {
    /// 0 when everything agreed, 3 when some iterate has infinitely many
    /// classes, 4 on any oracle disagreement.
    pub fn exit_code(&self) -> i32 {
        if !self.agreement {
            4
        } else if self.infinite_reidemeister {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

struct Timer<'a>(&'a mut BTreeMap<String, f64>);

impl Timer<'_> {
    fn run<T>(&mut self, key: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.0.insert(key.to_string(), start.elapsed().as_secs_f64() * 1e3);
        out
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

/// Runs every computation applicable to `problem` within `scope`.
pub fn run(problem: &Problem, scope: Scope) -> Result<Report, ProblemError> {
    let mut timing = BTreeMap::new();
    let mut report = Report {
        kind: problem.document.kind().to_string(),
        input: problem.document.clone(),
        counts: None,
        zeta: None,
        congruences: None,
        eventual_image: None,
        functional_equation: None,
        torsion: None,
        fox: None,
        notes: Vec::new(),
        infinite_reidemeister: false,
        agreement: true,
        timing_ms: BTreeMap::new(),
    };
    let started = Instant::now();
    match (&problem.system, scope) {
        (System::Free(phi), Scope::Full | Scope::Bounds) => {
            let order = problem.document.options().order;
            report.fox = Some(Timer(&mut timing).run("fox", || fox_section(phi, order))?);
        }
        (System::Free(_), _) => {
            return Err(ProblemError::Unsupported(
                "free-group documents only support bound computations".into(),
            ))
        }
        (System::Product(_), Scope::Bounds) => {
            return Err(ProblemError::Unsupported("bounds apply to free-group documents only".into()))
        }
        (System::Product(p), _) => run_product(problem, p, scope, &mut report, &mut timing)?,
    }
    timing.insert("total".into(), started.elapsed().as_secs_f64() * 1e3);
    report.timing_ms = timing;
    report.agreement = [
        report.counts.as_ref().map(|s| s.agreement),
        report.zeta.as_ref().map(|s| s.agreement),
        report.congruences.as_ref().map(|s| s.agreement),
        report.eventual_image.as_ref().map(|s| s.agreement),
        report.functional_equation.as_ref().map(|s| s.agreement),
        report.torsion.as_ref().map(|s| s.agreement),
        report.fox.as_ref().map(|s| s.agreement),
    ]
    .into_iter()
    .flatten()
    .all(|a| a);
    Ok(report)
}

fn run_product(
    problem: &Problem,
    p: &ProductEndomorphism,
    scope: Scope,
    report: &mut Report,
    timing: &mut BTreeMap<String, f64>,
) -> Result<(), ProblemError> {
    let options = problem.document.options();
    let order = options.order;
    let full = scope == Scope::Full;
    let kind = problem.document.kind();

    if scope != Scope::Torsion {
        let needed = if full { order.max(options.congruence_range) } else { order };
        let counts = Timer(timing).run("counts", || counts_section(p, kind, needed))?;
        let finite_all = counts.infinite_at.is_none();
        report.infinite_reidemeister |= !finite_all;
        let values: Vec<BigInt> = counts.entries.iter().map(|e| e.value.0.clone()).collect();
        report.counts = Some(counts);

        if finite_all {
            match Timer(timing).run("zeta", || zeta_section(p, &values[..order])) {
                Ok(z) => report.zeta = Some(z),
                Err(Error::InfiniteReidemeister { n }) => {
                    report.infinite_reidemeister = true;
                    report.notes.push(format!("zeta: iterate {n} has infinitely many classes"));
                }
                Err(Error::EigenvalueOnBoundary(e)) => {
                    report.infinite_reidemeister = true;
                    report.notes.push(format!("zeta: eigenvalue {e} makes an iterate infinite"));
                }
                Err(e) => return Err(ProblemError::Domain(e)),
            }
        } else {
            report.notes.push("zeta and congruences skipped: an iterate has infinitely many classes".into());
        }

        if full && finite_all {
            let range = options.congruence_range;
            let residues = congruence_check(&values[..range]);
            let agreement = residues.iter().all(|(_, r)| r.is_zero());
            report.congruences = Some(CongruenceSection {
                formula: "sum_{d | n} mu(d) R(phi^(n/d)) mod n".into(),
                oracle: "exact residues of the counted sequence".into(),
                residues: residues.into_iter().map(|(n, r)| (n, Int(r))).collect(),
                agreement,
            });
        }
    }

    if full && kind == "finite" {
        report.eventual_image = Some(Timer(timing).run("eventual_image", || eventual_image_section(p))?);
    }

    if full && kind == "abelian" {
        match Timer(timing).run("functional_equation", || functional_section(p.matrix())) {
            Ok(f) => report.functional_equation = Some(f),
            Err(Error::ZeroDeterminant) => report
                .notes
                .push("functional equation not applicable: det M = 0".into()),
            Err(e) => return Err(ProblemError::Domain(e)),
        }
    }

    if (full || scope == Scope::Torsion) && !problem.angles.is_empty() {
        let section = Timer(timing).run("torsion", || torsion_section(p, &problem.angles));
        report.infinite_reidemeister |= section
            .entries
            .iter()
            .any(|e| e.error.as_deref().is_some_and(|m| m.contains("infinite")));
        report.torsion = Some(section);
    }
    Ok(())
}

fn counts_section(p: &ProductEndomorphism, kind: &str, needed: usize) -> Result<CountsSection, ProblemError> {
    let (formula, oracle) = match kind {
        "abelian" => ("|det(I - M^n)|", "Smith normal form coset count of Z^k / (I - M^n) Z^k"),
        "finite" => (
            "number of phi^n-invariant conjugacy classes",
            "brute-force phi^n-conjugacy orbits",
        ),
        _ => (
            "|det(I - M^n)| * R(phi_F^n)",
            "coset enumeration with twisted-conjugacy merging",
        ),
    };
    let mut section = CountsSection {
        formula: formula.into(),
        trace_formula: "(-1)^(r + p n) sum_i (-1)^i Tr((∧^i M ⊗ B)^n)".into(),
        oracle: oracle.into(),
        entries: Vec::new(),
        infinite_at: None,
        notes: Vec::new(),
        agreement: true,
    };
    for n in 1..=needed as u32 {
        let value = match r_product(p, n) {
            Ok(v) => v,
            Err(Error::InfiniteReidemeister { n }) => {
                section.infinite_at = Some(n);
                break;
            }
            Err(e) => return Err(ProblemError::Domain(e)),
        };
        let trace = match r_product_trace(p, n) {
            Ok(t) => Some(t),
            Err(Error::EigenvalueOnBoundary(e)) => {
                if n == 1 {
                    section
                        .notes
                        .push(format!("trace route unavailable: eigenvalue {e} of M"));
                }
                None
            }
            Err(Error::InfiniteReidemeister { .. }) => Some(BigInt::zero()),
            Err(e) => return Err(ProblemError::Domain(e)),
        };
        let oracle = match kind {
            "abelian" => Some(coset_count(&p.matrix().pow(n).map_err(ProblemError::Domain)?).map_err(ProblemError::Domain)?),
            "finite" => Some(BigInt::from(
                phi_conjugacy_classes(p.finite_group(), &p.phi_f().iterate(n)).class_count(),
            )),
            _ => match r_product_oracle(p, n) {
                Ok(o) => Some(o),
                Err(Error::OracleTooLarge(_)) => {
                    section.notes.push(format!("n = {n}: coset oracle skipped, enumeration too large"));
                    None
                }
                Err(e) => return Err(ProblemError::Domain(e)),
            },
        };
        let agreement = trace.as_ref().is_none_or(|t| *t == value) && oracle.as_ref().is_none_or(|o| *o == value);
        section.agreement &= agreement;
        section.entries.push(CountEntry {
            n,
            value: Int(value),
            trace: trace.map(Int),
            oracle: oracle.map(Int),
            agreement,
        });
    }
    Ok(section)
}

fn zeta_section(p: &ProductEndomorphism, counts: &[BigInt]) -> Result<ZetaSection, Error> {
    let f = zeta_product(p)?;
    let signs = f.signs().expect("closed form records its signs");
    let order = counts.len();
    let closed = expand_rational(&f, order);
    let defining = TruncatedSeries::zeta_of_counts(counts);
    Ok(ZetaSection {
        formula: "(prod_i det(I - (∧^i M ⊗ B) sigma z)^((-1)^(i+1)))^((-1)^r)".into(),
        oracle: "exp(sum_n R(phi^n) z^n / n) from the counted sequence".into(),
        factors: f
            .factors()
            .iter()
            .map(|x| ZetaFactor {
                coeffs: ints(x.poly.coeffs()),
                exp: x.exponent,
            })
            .collect(),
        display: f.to_string(),
        p: signs.p,
        r: signs.r,
        sigma: signs.sigma,
        order,
        series: closed.coefficients().iter().map(|c| c.to_string()).collect(),
        agreement: closed == defining,
    })
}

fn eventual_image_section(p: &ProductEndomorphism) -> Result<EventualImageSection, ProblemError> {
    let g = p.finite_group();
    let phi = p.phi_f();
    let image = eventual_image(g, phi).map_err(ProblemError::Domain)?;
    let value = r_finite(g, phi);
    let oracle_value = phi_conjugacy_classes(&image.group, &image.endo).class_count();
    Ok(EventualImageSection {
        formula: "R(phi) on the whole group".into(),
        oracle: "brute-force phi-conjugacy orbits on the eventual image".into(),
        image_order: image.group.order(),
        steps: image.steps,
        value,
        oracle_value,
        agreement: value == oracle_value,
    })
}

/// Sample points for the numerical confirmation of the functional equation.
const SAMPLES: [(f64, f64); 4] = [(0.137, 0.071), (-0.093, 0.118), (0.041, -0.152), (0.2, 0.3)];

fn functional_section(m: &IntMatrix) -> Result<FunctionalSection, Error> {
    let fe = functional_equation_check(m)?;
    let zeta = zeta_formal(&ProductEndomorphism::abelian(m.clone())?)?;
    let eps = fe.epsilon.numer().to_f64().unwrap_or(f64::NAN) / fe.epsilon.denom().to_f64().unwrap_or(f64::NAN);
    let d = fe.determinant.to_f64().unwrap_or(f64::NAN);
    let residual = SAMPLES
        .iter()
        .find_map(|&(re, im)| sample_residual(&zeta, Complex64::new(re, im), d, eps, fe.exponent))
        .unwrap_or(f64::NAN);
    Ok(FunctionalSection {
        formula: "R(1/(d z)) = eps R(z)^((-1)^k), symbolic ratio".into(),
        oracle: "numerical evaluation at a sample point".into(),
        epsilon: fe.epsilon.to_string(),
        exponent: fe.exponent,
        determinant: Int(fe.determinant),
        sample_residual: residual,
        agreement: residual <= 1e-9,
    })
}

fn sample_residual(zeta: &FactoredRationalFunction, z: Complex64, d: f64, eps: f64, exponent: i32) -> Option<f64> {
    let lhs = zeta.eval_complex((z * d).inv()).ok()?;
    let rz = zeta.eval_complex(z).ok()?;
    let rhs = rz.powi(exponent) * eps;
    let scale = lhs.norm().max(rhs.norm()).max(POLE_GUARD);
    Some((lhs - rhs).norm() / scale)
}

fn torsion_section(p: &ProductEndomorphism, angles: &[num_rational::BigRational]) -> TorsionSection {
    let entries: Vec<TorsionEntry> = angles
        .iter()
        .map(|t| match torsion_special_value(p, t) {
            Ok(tv) => TorsionEntry {
                angle: t.to_string(),
                from_zeta: Some(tv.from_zeta),
                from_lefschetz: Some(tv.from_lefschetz),
                relative_error: Some(tv.relative_error()),
                error: None,
                agreement: true,
            },
            Err(e) => TorsionEntry {
                angle: t.to_string(),
                from_zeta: None,
                from_lefschetz: None,
                relative_error: None,
                agreement: !matches!(e, Error::OracleDisagreement(_)),
                error: Some(e.to_string()),
            },
        })
        .collect();
    TorsionSection {
        formula: "|R(sigma lambda)|^((-1)^(r+1))".into(),
        oracle: "|L(lambda)|^-1 from the dual homology matrices".into(),
        tolerance: TORSION_TOLERANCE,
        agreement: entries.iter().all(|e| e.agreement),
        entries,
    }
}

/// Twisted powers stop once the norm passes this size.
const TWISTED_NORM_LIMIT: u64 = 20_000;

fn fox_section(phi: &FreeGroupEndo, order: usize) -> Result<FoxSection, ProblemError> {
    let bounds = nielsen_radius_bounds(phi).map_err(ProblemError::Domain)?;
    let d = jacobian(phi);
    let norm_matrix = d.norm_matrix();
    let mut twisted_norms = Vec::new();
    let mut agreement = bounds.bound_spectral + 1e-12 >= bounds.bound_norm.to_f64().unwrap_or(f64::NAN)
        && bounds.max_spectral.lower <= bounds.max_spectral.value
        && bounds.max_spectral.value <= bounds.max_spectral.upper;
    if d.rows() > 0 {
        let mut power: GroupRingMatrix = d.clone();
        let mut norm_power = norm_matrix.clone();
        for n in 1..=order as u32 {
            if n > 1 {
                power = phi.apply_matrix(&power).mul(&d).map_err(ProblemError::Domain)?;
                norm_power = norm_power.mul(&norm_matrix).map_err(ProblemError::Domain)?;
            }
            let norm = power.norm();
            let bound = norm_power.entry_sum();
            agreement &= norm <= bound;
            let root = norm.to_f64().unwrap_or(f64::INFINITY).powf(1.0 / f64::from(n));
            let stop = norm > BigInt::from(TWISTED_NORM_LIMIT);
            twisted_norms.push(TwistedNorm {
                n,
                norm: Int(norm),
                bound: Int(bound),
                root,
            });
            if stop {
                break;
            }
        }
    }
    Ok(FoxSection {
        formula: "1 / max_d ||F_d|| and 1 / max_d s(F_d^norm) with F_0 = (1), F_1 = D".into(),
        oracle: "Collatz-Wielandt bracket for s; ||(zD)^n|| <= sum of entries of (D^norm)^n".into(),
        jacobian: (0..d.rows())
            .map(|i| (0..d.cols()).map(|j| d.get(i, j).to_string()).collect())
            .collect(),
        norm_matrix: norm_matrix.to_rows().into_iter().map(|r| ints(&r)).collect(),
        max_norm: Int(bounds.max_norm.clone()),
        bound_norm: bounds.bound_norm.to_string(),
        bound_norm_value: bounds.bound_norm.to_f64().unwrap_or(f64::NAN),
        spectral_radius: bounds.max_spectral.value,
        spectral_bracket: (bounds.max_spectral.lower, bounds.max_spectral.upper),
        bound_spectral: bounds.bound_spectral,
        bound_spectral_enclosure: bounds.spectral_enclosure,
        twisted_norms,
        agreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::parse_problem;
    use num_traits::One;

    fn report(text: &str) -> Report {
        run(&parse_problem(text).unwrap(), Scope::Full).unwrap()
    }

    #[test]
    fn abelian_minus_two() {
        let r = report(r#"{"kind":"abelian","matrix":[[-2]]}"#);
        assert!(r.agreement);
        assert_eq!(r.exit_code(), 0);
        let counts = r.counts.as_ref().unwrap();
        for e in &counts.entries {
            let expected = (BigInt::one() - BigInt::from(-2).pow(e.n)).magnitude().clone();
            assert_eq!(e.value.0, BigInt::from(expected));
        }
        let zeta = r.zeta.as_ref().unwrap();
        assert_eq!(zeta.factors.len(), 2);
        let json = serde_json::to_value(&zeta.factors).unwrap();
        assert!(json.as_array().unwrap().contains(&serde_json::json!({"coeffs": [1, 1], "exp": 1})));
        assert!(json.as_array().unwrap().contains(&serde_json::json!({"coeffs": [1, -2], "exp": -1})));
        assert!(r.congruences.as_ref().unwrap().agreement);
        assert_eq!(r.functional_equation.as_ref().unwrap().epsilon, "-1/2");
        let t = &r.torsion.as_ref().unwrap().entries[0];
        assert!((t.from_zeta.unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn free_fibonacci() {
        let r = report(r#"{"kind":"free","rank":2,"images":["ab","a"]}"#);
        let fox = r.fox.as_ref().unwrap();
        assert_eq!(fox.bound_norm, "1/3");
        assert!((fox.bound_spectral - 0.618_033_988_749_895).abs() < 1e-9);
        assert_eq!(fox.twisted_norms[1].norm, Int(BigInt::from(5)));
        assert!(r.agreement);
    }

    #[test]
    fn finite_s3_identity() {
        let r = report(r#"{"kind":"finite","group":{"catalog":"S3"}}"#);
        let e = &r.counts.as_ref().unwrap().entries[0];
        assert_eq!(e.value.0, BigInt::from(3));
        assert_eq!(e.trace.as_ref().unwrap().0, BigInt::from(3));
        assert_eq!(e.oracle.as_ref().unwrap().0, BigInt::from(3));
        assert!(r.eventual_image.as_ref().unwrap().agreement);
        assert!(r.agreement);
    }

    #[test]
    fn rotation_hits_an_infinite_iterate() {
        let r = report(r#"{"kind":"abelian","matrix":[[0,1],[-1,0]]}"#);
        assert_eq!(r.counts.as_ref().unwrap().infinite_at, Some(4));
        assert!(r.zeta.is_none());
        assert_eq!(r.exit_code(), 3);
        assert_eq!(r.functional_equation.as_ref().unwrap().exponent, 1);
    }

    #[test]
    fn scopes() {
        let p = parse_problem(r#"{"kind":"abelian","matrix":[[3]]}"#).unwrap();
        assert!(matches!(run(&p, Scope::Bounds), Err(ProblemError::Unsupported(_))));
        let z = run(&p, Scope::Zeta).unwrap();
        assert!(z.zeta.is_some() && z.torsion.is_none() && z.congruences.is_none());
        let t = run(&p, Scope::Torsion).unwrap();
        assert!(t.counts.is_none() && t.torsion.is_some());
    }

    #[test]
    fn product_document() {
        let r = report(
            r#"{"kind":"product","matrix":[[-2]],"group":{"catalog":"V4"},"images":[2,1],"options":{"order":4,"congruence_range":4}}"#,
        );
        assert!(r.agreement, "{}", r.to_json());
        assert_eq!(r.counts.as_ref().unwrap().entries[0].value.0, BigInt::from(6));
    }
}
