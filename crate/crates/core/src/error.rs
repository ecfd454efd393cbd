use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("index out of range: {0}")]
    BadIndex(String),
    #[error("eigenvalue {0} lies on the boundary; some iterate has infinitely many Reidemeister classes")]
    EigenvalueOnBoundary(i64),
    #[error("infinite Reidemeister number: det(I - M^{n}) = 0")]
    InfiniteReidemeister { n: u32 },
    #[error("closure exceeds the group order cap of {cap}")]
    ClosureTooLarge { cap: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("generators do not generate the group (closure has order {closure} of {order})")]
    DoesNotGenerate { closure: usize, order: usize },
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("unknown catalog group: {0}")]
    UnknownGroup(String),
    #[error("unknown group element: {0}")]
    UnknownElement(String),
    #[error("not invertible: {0}")]
    NonInvertible(String),
    #[error("functional equation ratio is not constant: {0}")]
    NotConstant(String),
    #[error("zero determinant")]
    ZeroDeterminant,
    #[error("zeta factor vanishes at the evaluation point (|factor| = {0:e})")]
    PoleAtEvaluation(f64),
    #[error("invalid free-group word: {0}")]
    BadWord(String),
    #[error("brute-force oracle is too large to run: {0}")]
    OracleTooLarge(String),
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
}
