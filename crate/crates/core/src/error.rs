use thiserror::Error;

/// Errors raised by the exact and numeric pipelines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("frame field {frame} does not exist for target {target}")]
    InvalidFrame {
        frame: &'static str,
        target: &'static str,
    },

    #[error("sections live on different targets ({left} vs {right})")]
    TargetMismatch {
        left: &'static str,
        right: &'static str,
    },

    #[error("function is not a Laplace eigenfunction: {0}")]
    NotEigenfunction(String),

    /// Non-integer p-energy exponents have no exact representation.
    #[error("exact mode unavailable for p = {0}; use the floating-point path")]
    ExactModeUnavailable(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two independent computations disagreed. Never expected on a correct build.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
