use thiserror::Error;

/// Errors raised by the algebra engine and the layers built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("arity mismatch: expected {expected} generators, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("element is not supported on generators below step {step} (mentions `{generator}`)")]
    SupportViolation { step: usize, generator: String },

    #[error("rewrite budget of {0} steps exhausted")]
    BudgetExhausted(u64),

    #[error("step {step} out of range {min}..={max}")]
    StepOutOfRange { step: usize, min: usize, max: usize },

    #[error("malformed tower: {0}")]
    MalformedTower(String),

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("winding map violates a defining relation: {0}")]
    RelationViolation(String),

    #[error("degree bound must be at least 1")]
    DegreeBound,

    #[error("generating set is not rewrite-stable: {0}")]
    NotRewriteStable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
