use thiserror::Error;

/// Errors raised by group construction, set algebra and the decision routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclic factor {0} is invalid (factors must be at least 2)")]
    InvalidFactor(usize),

    #[error("group order overflows the index range")]
    OrderOverflow,

    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("sets belong to different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },

    #[error("operation requires a non-empty set")]
    EmptySet,

    #[error("the given sets do not form a complement pair (W + C != G)")]
    NotAComplement,

    #[error("step element must be non-zero")]
    ZeroStep,

    #[error("degenerate arithmetic progression: {0}")]
    DegenerateProgression(String),

    #[error("homomorphism is not injective on the given set")]
    NotInjective,

    #[error("input pair does not verify: {0}")]
    PreconditionFailed(String),

    #[error("constructed witness failed re-verification: {0}")]
    VerificationFailed(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
