use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("quadratic numbers over different discriminants: {left} vs {right}")]
    DiscriminantMismatch { left: String, right: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sequence too short: need {needed} terms, got {got}")]
    Length { needed: usize, got: usize },

    #[error("index out of range: {0}")]
    Index(String),

    #[error("outside the formula's domain: {0}")]
    Domain(String),

    #[error("internal fault: {0}")]
    Internal(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
