use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Caller supplied inconsistent or out-of-range arguments.
    #[error("invalid input: {0}")]
    Input(String),

    /// A Pauli term could not be parsed. `position` is a character offset.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// The dense representation would exceed the configured qubit cap.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A linear-algebra routine failed to converge.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}
