use thiserror::Error;

/// Errors raised by the core algorithms.
///
/// Each variant maps to a stable machine-readable category (see [`Error::category`])
/// which the command-line front end prints on failure.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integration failed: {0}")]
    Integration(String),
    #[error("tolerance not reached: {0}")]
    Tolerance(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("end is not regular: {0}")]
    NotRegular(String),
    #[error("ill-defined end: {0}")]
    IllDefinedEnd(String),
    #[error("unknown catalog entry: {0}")]
    UnknownExample(String),
}

impl Error {
    pub fn category(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Precondition(_) => "precondition",
            Error::Integration(_) => "integration",
            Error::Tolerance(_) => "tolerance",
            Error::Degenerate(_) => "degenerate",
            Error::NotRegular(_) => "not-regular",
            Error::IllDefinedEnd(_) => "ill-defined-end",
            Error::UnknownExample(_) => "unknown-example",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
