use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fox::FreeGroupEndo;
use crate::group::{catalog, endo_from_generator_images, group_from_permutations, FiniteGroup, DEFAULT_ORDER_CAP};
use crate::linalg::IntMatrix;
use crate::problem::ProblemError;
use crate::reidemeister::ProductEndomorphism;

/// A problem file. The `kind` tag selects the payload.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProblemDocument {
    Finite(FiniteDoc),
    Abelian(AbelianDoc),
    Product(ProductDoc),
    Free(FreeDoc),
}

/// Endomorphism of a finite group, given by generator images.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteDoc {
    pub group: GroupSpec,
    /// Images of the generators; the identity map when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<ElementRef>>,
    #[serde(default)]
    pub options: Options,
}

/// Linear endomorphism of a free abelian group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianDoc {
    pub matrix: Vec<Vec<i64>>,
    #[serde(default)]
    pub options: Options,
}

/// `(v, f) -> (M v, psi(v) phi_F(f))` on `Z^k x F`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDoc {
    pub matrix: Vec<Vec<i64>>,
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<ElementRef>>,
    /// `psi` of each standard basis vector; trivial when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<ElementRef>>,
    #[serde(default)]
    pub options: Options,
}

/// Endomorphism of a free group, images written as words.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeDoc {
    pub rank: u32,
    pub images: Vec<String>,
    #[serde(default)]
    pub options: Options,
}

/// A finite group: either a catalog name or permutation generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
}

/// A group element, by index, by name, or by permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Name(String),
    Permutation(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Number of iterates and series order.
    #[serde(default = "default_order")]
    pub order: usize,
    #[serde(default = "default_order")]
    pub congruence_range: usize,
    /// Holonomy angles `t` for `lambda = exp(2 pi i t)`, as `"p/q"`.
    #[serde(default = "default_angles")]
    pub torsion_angles: Vec<String>,
}

fn default_order() -> usize {
    12
}

fn default_angles() -> Vec<String> {
    vec!["1/2".into()]
}

impl Default for Options {
    fn default() -> Self {
        Self {
            order: default_order(),
            congruence_range: default_order(),
            torsion_angles: default_angles(),
        }
    }
}

impl ProblemDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Finite(_) => "finite",
            Self::Abelian(_) => "abelian",
            Self::Product(_) => "product",
            Self::Free(_) => "free",
        }
    }

    pub fn options(&self) -> &Options {
        match self {
            Self::Finite(d) => &d.options,
            Self::Abelian(d) => &d.options,
            Self::Product(d) => &d.options,
            Self::Free(d) => &d.options,
        }
    }

    pub fn options_mut(&mut self) -> &mut Options {
        match self {
            Self::Finite(d) => &mut d.options,
            Self::Abelian(d) => &mut d.options,
            Self::Product(d) => &mut d.options,
            Self::Free(d) => &mut d.options,
        }
    }

    /// Canonical JSON: fixed key order, defaults filled in.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

/// The mathematical object a document describes.
#[derive(Clone, Debug)]
pub enum System {
    Product(ProductEndomorphism),
    Free(FreeGroupEndo),
}

/// A document that passed validation, with its built system.
#[derive(Clone, Debug)]
pub struct Problem {
    pub document: ProblemDocument,
    pub system: System,
    pub angles: Vec<BigRational>,
}

fn invalid(field: &str, source: Error) -> ProblemError {
    ProblemError::Validation {
        field: field.to_string(),
        source,
    }
}

/// Parses and validates a document with the default group-order cap.
pub fn parse_problem(text: &str) -> Result<Problem, ProblemError> {
    parse_problem_with_cap(text, DEFAULT_ORDER_CAP)
}

pub fn parse_problem_with_cap(text: &str, cap: usize) -> Result<Problem, ProblemError> {
    validate(parse_document(text)?, cap)
}

/// Parses the JSON without validating the mathematics.
pub fn parse_document(text: &str) -> Result<ProblemDocument, ProblemError> {
    let mut value: serde_json::Value = serde_json::from_str(text).map_err(|e| ProblemError::Schema(e.to_string()))?;
    let Some(object) = value.as_object_mut() else {
        return Err(ProblemError::Schema("a problem document must be a JSON object".into()));
    };
    let kind = match object.remove("kind") {
        Some(serde_json::Value::String(k)) => k,
        Some(other) => return Err(ProblemError::Schema(format!("at kind: expected a string, found {other}"))),
        None => return Err(ProblemError::Schema("missing field `kind`".into())),
    };
    Ok(match kind.as_str() {
        "finite" => ProblemDocument::Finite(payload(value)?),
        "abelian" => ProblemDocument::Abelian(payload(value)?),
        "product" => ProblemDocument::Product(payload(value)?),
        "free" => ProblemDocument::Free(payload(value)?),
        other => {
            return Err(ProblemError::Schema(format!(
                "at kind: unknown kind {other:?}, expected finite, abelian, product or free"
            )))
        }
    })
}

fn payload<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T, ProblemError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        ProblemError::Schema(if path == "." {
            inner.to_string()
        } else {
            format!("at {path}: {inner}")
        })
    })
}

pub fn validate(document: ProblemDocument, cap: usize) -> Result<Problem, ProblemError> {
    let angles = document
        .options()
        .torsion_angles
        .iter()
        .map(|s| {
            BigRational::from_str(s.trim())
                .map_err(|_| ProblemError::Schema(format!("at options.torsion_angles: {s:?} is not a rational")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if document.options().order == 0 {
        return Err(ProblemError::Schema("at options.order: must be at least 1".into()));
    }
    let system = match &document {
        ProblemDocument::Finite(FiniteDoc { group, images, .. }) => {
            let (g, gens) = build_group(group, cap)?;
            let phi = build_endo(&g, &gens, images.as_deref())?;
            System::Product(ProductEndomorphism::finite(g, phi).map_err(|e| invalid("images", e))?)
        }
        ProblemDocument::Abelian(AbelianDoc { matrix, .. }) => {
            let m = build_matrix(matrix)?;
            let p = ProductEndomorphism::abelian(m).map_err(|e| invalid("matrix", e))?;
            check_finite_reidemeister(&p)?;
            System::Product(p)
        }
        ProblemDocument::Product(ProductDoc {
            matrix,
            group,
            images,
            psi,
            ..
        }) => {
            let m = build_matrix(matrix)?;
            let (g, gens) = build_group(group, cap)?;
            let phi = build_endo(&g, &gens, images.as_deref())?;
            let psi = match psi {
                Some(refs) => refs
                    .iter()
                    .map(|r| resolve(&g, r).map_err(|e| invalid("psi", e)))
                    .collect::<Result<Vec<_>, _>>()?,
                None => vec![g.identity(); m.rows()],
            };
            let p = ProductEndomorphism::new(m, g, phi, psi).map_err(|e| invalid("psi", e))?;
            check_finite_reidemeister(&p)?;
            System::Product(p)
        }
        ProblemDocument::Free(FreeDoc { rank, images, .. }) => {
            let words: Vec<&str> = images.iter().map(String::as_str).collect();
            System::Free(FreeGroupEndo::parse(*rank, &words).map_err(|e| invalid("images", e))?)
        }
    };
    Ok(Problem {
        document,
        system,
        angles,
    })
}

fn check_finite_reidemeister(p: &ProductEndomorphism) -> Result<(), ProblemError> {
    let d = p.matrix().one_minus().and_then(|a| a.det()).map_err(|e| invalid("matrix", e))?;
    if num_traits::Zero::is_zero(&d) {
        return Err(invalid("matrix", Error::InfiniteReidemeister { n: 1 }));
    }
    Ok(())
}

fn build_matrix(rows: &[Vec<i64>]) -> Result<IntMatrix, ProblemError> {
    let k = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != k) {
        return Err(invalid(
            "matrix",
            Error::NotSquare {
                rows: k,
                cols: bad.len(),
            },
        ));
    }
    let slices: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Ok(if k == 0 {
        IntMatrix::zeros(0, 0)
    } else {
        IntMatrix::from_i64(&slices)
    })
}

fn build_group(spec: &GroupSpec, cap: usize) -> Result<(FiniteGroup, Vec<usize>), ProblemError> {
    match (&spec.catalog, spec.degree, &spec.generators) {
        (Some(name), None, None) => catalog::by_name(name)
            .filter(|(g, _)| g.order() <= cap)
            .ok_or_else(|| invalid("group.catalog", Error::UnknownGroup(format!("{name:?} (or its order exceeds the cap {cap})")))),
        (None, Some(degree), Some(gens)) => {
            let g = group_from_permutations(degree, gens, cap).map_err(|e| invalid("group.generators", e))?;
            let idx = gens
                .iter()
                .map(|p| g.element_of_permutation(p).expect("generators lie in their closure"))
                .collect();
            Ok((g, idx))
        }
        _ => Err(ProblemError::Schema(
            "at group: give either \"catalog\" or both \"degree\" and \"generators\"".into(),
        )),
    }
}

fn build_endo(
    g: &FiniteGroup,
    gens: &[usize],
    images: Option<&[ElementRef]>,
) -> Result<crate::group::GroupEndomorphism, ProblemError> {
    let Some(images) = images else {
        return Ok(crate::group::GroupEndomorphism::identity(g));
    };
    let targets = images
        .iter()
        .map(|r| resolve(g, r))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| invalid("images", e))?;
    endo_from_generator_images(g, gens, &targets).map_err(|e| invalid("images", e))
}

fn resolve(g: &FiniteGroup, r: &ElementRef) -> Result<usize, Error> {
    match r {
        ElementRef::Index(i) if *i < g.order() => Ok(*i),
        ElementRef::Index(i) => Err(Error::UnknownElement(format!("index {i} is out of range"))),
        ElementRef::Name(name) => g
            .names()
            .and_then(|names| names.iter().position(|n| n == name))
            .ok_or_else(|| Error::UnknownElement(format!("no element named {name:?}"))),
        ElementRef::Permutation(p) => g
            .element_of_permutation(p)
            .ok_or_else(|| Error::UnknownElement(format!("permutation {p:?} is not in the group"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let p = parse_problem(r#"{"kind":"abelian","matrix":[[-2]]}"#).unwrap();
        assert_eq!(p.document.options().order, 12);
        assert!(matches!(p.system, System::Product(_)));
        let p = parse_problem(r#"{"kind":"free","rank":2,"images":["ab","a"]}"#).unwrap();
        assert!(matches!(p.system, System::Free(_)));
    }

    #[test]
    fn infinite_reidemeister_is_a_validation_error() {
        let err = parse_problem(r#"{"kind":"abelian","matrix":[[1]]}"#).unwrap_err();
        assert!(matches!(
            err,
            ProblemError::Validation {
                source: Error::InfiniteReidemeister { n: 1 },
                ..
            }
        ));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn schema_errors_carry_context() {
        let err = parse_problem(r#"{"kind":"abelian","matrix":[[1, "x"]]}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("matrix"), "{msg}");
        assert_eq!(err.exit_code(), 2);
        assert!(parse_problem(r#"{"kind":"banana"}"#).is_err());
        assert!(parse_problem(r#"{"kind":"abelian","matrix":[[2]],"extra":1}"#).is_err());
    }

    #[test]
    fn bad_homomorphism_is_reported() {
        // a 3-cycle cannot map to a transposition
        let doc = r#"{"kind":"finite","group":{"catalog":"S3"},"images":[[1,0,2],[1,0,2]]}"#;
        let err = parse_problem(doc).unwrap_err();
        assert!(matches!(
            err,
            ProblemError::Validation {
                source: Error::NotAHomomorphism(_),
                ..
            }
        ));
    }

    #[test]
    fn element_references() {
        let doc = r#"{"kind":"finite","group":{"catalog":"Q8"},"images":["j","i"]}"#;
        assert!(parse_problem(doc).is_ok());
        let doc = r#"{"kind":"product","matrix":[[-2]],"group":{"catalog":"V4"},"psi":[1]}"#;
        assert!(parse_problem(doc).is_ok());
        let doc = r#"{"kind":"finite","group":{"degree":3,"generators":[[1,2,0]]},"images":[[2,0,1]]}"#;
        assert!(parse_problem(doc).is_ok());
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for text in [
            r#"{"kind":"abelian","matrix":[[-2]]}"#,
            r#"{"options":{"order":5},"kind":"free","rank":2,"images":["ab","a"]}"#,
            r#"{"kind":"product","matrix":[[2,1],[1,1]],"group":{"catalog":"C3"},"images":[2]}"#,
        ] {
            let once = parse_problem(text).unwrap().document.to_canonical_json();
            let twice = parse_problem(&once).unwrap().document.to_canonical_json();
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn group_order_cap() {
        let doc = r#"{"kind":"finite","group":{"catalog":"S5"}}"#;
        assert!(parse_problem_with_cap(doc, 100).is_err());
        assert!(parse_problem_with_cap(doc, 120).is_ok());
    }
}
