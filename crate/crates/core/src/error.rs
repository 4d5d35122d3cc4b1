use alloc::string::String;

/// Errors raised when constructing or combining objects outside their domain.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid breakpoints: {0}")]
    InvalidKnots(String),
    #[error("not a member of the transform class: {0}")]
    NotInClass(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("no closed form; supply FiniteSet sample ({0})")]
    NoClosedForm(String),
    #[error("probabilistic norms differ: {0}")]
    DifferentNorms(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
