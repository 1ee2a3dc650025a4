use thiserror::Error;

/// Errors raised by the algebraic and enumeration layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("Euler characteristic is not an integer ({context})")]
    NonIntegralChi { context: String },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("weight mismatch: expected weight {expected}, got {found}")]
    WeightMismatch { expected: i64, found: i64 },

    #[error("polynomial is not homogeneous and has no declared weight")]
    NotHomogeneous,

    #[error("E6-degree cap violated: {0}")]
    CapViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for the assert-level defects that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalInconsistency(_) | Error::CapViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
