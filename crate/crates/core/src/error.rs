//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failure modes of the laboratory's computations.
///
/// The variants line up with the exit-code classes of the command-line
/// front end: argument/domain problems are configuration errors, `Data`
/// covers malformed or missing inputs, `Resource` is a capacity limit and
/// `Numeric` is a quadrature or series failure.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("outside domain: {0}")]
    Domain(String),

    #[error("data error: {0}")]
    Data(String),

    #[error("capacity exceeded: requested {requested}, limit {limit} ({what})")]
    Resource {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("pole at s = {0}")]
    Pole(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
