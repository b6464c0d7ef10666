use thiserror::Error;

/// Errors raised by constructors and operations whose preconditions fail.
///
/// Axiom failures are never errors: validators return a [`crate::Report`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("presheaf enumeration estimate {estimate} exceeds cap {cap}")]
    CapExceeded { estimate: u128, cap: usize },
    #[error("invalid dualizing family: {0}")]
    InvalidFamily(String),
    #[error("quantaloid carries no dualizing family")]
    NotGirard,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
