use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input graph, partition, triple, ...
    Invalid(String),
    /// Operation not defined for the requested class or case.
    Unsupported(String),
    /// A brute-force or materialization cap would be exceeded.
    CapExceeded { what: &'static str, size: usize, cap: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(m) => write!(f, "invalid input: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::CapExceeded { what, size: usize::MAX, cap } => {
                write!(f, "{what}: size beyond machine range exceeds cap {cap}")
            }
            Error::CapExceeded { what, size, cap } => {
                write!(f, "{what}: size {size} exceeds cap {cap}")
            }
        }
    }
}

impl core::error::Error for Error {}
