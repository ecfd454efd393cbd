//! Problem documents, validation, and reports that pair every computed
//! quantity with an independent check.

mod document;
mod render;
mod report;

pub use document::{
    parse_document, parse_problem, parse_problem_with_cap, validate, AbelianDoc, ElementRef, FiniteDoc, FreeDoc, GroupSpec,
    Options, Problem, ProblemDocument, ProductDoc, System,
};
pub use report::{
    run, CongruenceSection, CountEntry, CountsSection, EventualImageSection, FoxSection, FunctionalSection, Int, Report,
    Scope, TorsionEntry, TorsionSection, TwistedNorm, ZetaFactor, ZetaSection,
};

use crate::error::Error;

#[derive(Debug, thiserror::Error)]
pub enum ProblemError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid {field}: {source}")]
    Validation { field: String, source: Error },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Domain(Error),
}

impl ProblemError {
    /// Process exit code: 2 for bad input, 3 when a Reidemeister number is
    /// infinite, 4 when an oracle disagrees.
    pub fn exit_code(&self) -> i32 {
        let source = match self {
            Self::Validation { source, .. } | Self::Domain(source) => source,
            _ => return 2,
        };
        match source {
            Error::InfiniteReidemeister { .. } | Error::EigenvalueOnBoundary(_) => 3,
            Error::OracleDisagreement(_) => 4,
            _ => 2,
        }
    }
}
