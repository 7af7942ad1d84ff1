use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Mismatched number of generators (or out-of-range generator index).
    Arity {
        expected: usize,
        found: usize,
    },
    GenusMismatch {
        left: usize,
        right: usize,
    },
    DivisionByZero,
    Parse(String),
    NotPrime(u64),
    /// An argument outside the documented range of an operation.
    InvalidArgument(String),
    /// Enumeration refused because the input exceeds the configured limits.
    ResourceGuard(String),
    /// A computed object failed a structural check it must satisfy.
    Verification(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Arity { expected, found } => {
                write!(
                    f,
                    "arity mismatch: expected {expected} generators, found {found}"
                )
            }
            Error::GenusMismatch { left, right } => {
                write!(f, "genus mismatch: {left} vs {right}")
            }
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::Parse(s) => write!(f, "cannot parse {s:?}"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::InvalidArgument(s) => write!(f, "invalid argument: {s}"),
            Error::ResourceGuard(s) => write!(f, "resource guard: {s}"),
            Error::Verification(s) => write!(f, "verification failed: {s}"),
        }
    }
}

impl core::error::Error for Error {}
