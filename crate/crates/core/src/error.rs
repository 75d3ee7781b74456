use thiserror::Error;

use crate::expr::ExprError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("axis {index} out of range for dimension {dim}")]
    InvalidIndex { index: usize, dim: usize },
    #[error("operation needs a form of positive degree")]
    DegreeZero,
    #[error("form is not closed")]
    NotClosed,
    #[error("singular evaluation {0}")]
    Singular(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal check failed: {0}")]
    Verification(String),
}

impl Error {
    /// True for errors caused by malformed input rather than mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Expr(ExprError::Syntax { .. } | ExprError::UnknownVariable { .. })
                | Error::InvalidInput(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
