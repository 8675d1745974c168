use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length mismatch: expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("zero weight at position {0}")]
    ZeroWeight(usize),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    /// A document or model violates a named structural invariant.
    #[error("invalid input [{invariant}]: {detail}")]
    Invalid { invariant: &'static str, detail: String },

    #[error("assignment does not cover stratum `{0}`")]
    MissingStratum(String),

    #[error("assignments disagree on stratum `{0}`")]
    Disagreement(String),

    #[error("map violates its contract: {0}")]
    ContractViolation(String),

    #[error("the circle lies in the isotropy of stratum `{0}`; the action is not locally free")]
    NotLocallyFree(String),

    #[error("linear forms are dependent")]
    DependentForms,

    #[error("targets of constraints {0} and {1} disagree on the intersection of their subspaces")]
    IncompatibleTargets(usize, usize),

    #[error("assembled extension fails constraint {0}; this is a bug")]
    AssemblyVerificationFailure(usize),

    #[error("component `{0}` has moment value 0; the level is not regular")]
    Regularity(String),

    #[error("component `{0}` carries no weights")]
    MissingWeights(String),

    #[error("component `{0}` carries no moment value")]
    MissingMoment(String),

    #[error("circle direction must be one-dimensional, got dimension {0}")]
    CircleDimension(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::Invalid {
            invariant,
            detail: detail.into(),
        }
    }
}
