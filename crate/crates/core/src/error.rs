use std::fmt;

/// Errors surfaced by the counting and evaluation routines.
///
/// `ResourceExceeded` is the only retryable variant: the caller can raise the
/// memory budget, shrink the box, or switch to a streaming strategy.
/// `InvariantViolation` means an internal cross-check failed and indicates a
/// bug, never bad input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An enumeration or table would exceed the configured memory budget.
    ResourceExceeded {
        needed_bytes: u64,
        budget_bytes: u64,
        hint: &'static str,
    },
    /// A precondition on the arguments does not hold.
    InvalidInput(String),
    /// A modulus that must be an odd prime is not.
    NotPrime(u64),
    /// Tuple entries required to be pairwise distinct in a residue ring collide.
    ResiduesNotDistinct,
    /// Two routes that must agree exactly disagreed, or a proven bound failed.
    InvariantViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ResourceExceeded {
                needed_bytes,
                budget_bytes,
                hint,
            } => write!(
                f,
                "memory budget exceeded: need ~{needed_bytes} bytes, budget {budget_bytes} ({hint})"
            ),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::NotPrime(p) => write!(f, "{p} is not an odd prime"),
            Error::ResiduesNotDistinct => write!(
                f,
                "tuple entries are not pairwise distinct in the required residue ring"
            ),
            Error::InvariantViolation(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
