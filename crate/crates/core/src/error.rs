use thiserror::Error;

/// Errors raised by the analysis engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("weight columns do not span R^{k}")]
    NotEffective { k: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no index set satisfies the requested condition")]
    NotFound,
    #[error("linear system is infeasible")]
    Infeasible,
    #[error("series argument is not nilpotent (scalar term {0})")]
    NonNilpotent(String),
    #[error("ring elements belong to different presentations")]
    PresentationMismatch,
    #[error("generator name `{0}` appears in both factors")]
    NameCollision(String),
    #[error("malformed top monomial: {0}")]
    MalformedTop(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("volume formula not available for moduli kind {0}")]
    UnsupportedKind(String),
    #[error("non-positive volume or Kähler parameter")]
    NonPositiveVolume,
    #[error("inconsistent model: {0}")]
    InconsistentModel(String),
    #[error("moduli space is not stable (sigma is not interior to the cone)")]
    NotStable,
    #[error("constrained moduli space would have negative dimension {0}")]
    NegativeDimension(i64),
    #[error("embedding into the unconstrained moduli space is not open and dense")]
    NotOpenDense,
    #[error("no stability threshold: tau*vol is not interior to the cone")]
    NoThreshold,
    #[error("{n} sections exceed the subset-enumeration cap of {cap}")]
    TooManySections { n: usize, cap: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
