use std::fmt;

/// Error type for every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    Domain {
        op: &'static str,
        value: f64,
        expected: &'static str,
    },
    /// An iteration failed to reach its stopping criterion. Indicates a bug
    /// or a pathological input that slipped past the domain checks.
    Convergence {
        op: &'static str,
        detail: &'static str,
    },
    /// No registered claim matches the requested id.
    UnknownClaim { id: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain {
                op,
                value,
                expected,
            } => write!(f, "{op}: argument {value} is outside {expected}"),
            Error::Convergence { op, detail } => write!(f, "{op}: {detail}"),
            Error::UnknownClaim { id } => write!(f, "no claim matches {id:?}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
