use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different rings (variable sets or truncation differ).
    #[error("configuration error: {0}")]
    Config(String),

    /// A precondition of the operation does not hold for the given input.
    #[error("domain error: {0}")]
    Domain(String),

    /// The polynomial handed to the Chern-basis conversion is not symmetric.
    #[error("polynomial is not symmetric under the transposition of variables {0} and {1}")]
    NotSymmetric(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),

    /// An identity that must hold by construction failed. This is a bug.
    #[error("internal identity violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// True for errors caused by bad input rather than by a broken identity.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
