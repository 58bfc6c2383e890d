use thiserror::Error;

/// Errors raised by the computational kernels.
///
/// Variants split into two groups: rejected inputs (the caller asked for
/// something outside an operation's domain) and internal consistency
/// failures (an exactness or conjugacy check that should never fail did).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not hyperbolic (trace {trace})")]
    NotHyperbolic { trace: String },

    #[error("p-adic valuation of zero is undefined")]
    ZeroValuation,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
