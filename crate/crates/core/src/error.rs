use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input has length {actual}, expected {expected}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("{0}")]
    InvalidParameter(String),

    #[error("not a permutation of 1..={0}")]
    InvalidOrder(usize),

    #[error("cut {cut} out of range for arity {arity} (need 0 < cut < arity)")]
    CutOutOfRange { cut: usize, arity: usize },

    #[error("arity {arity} exceeds the enumeration cap {cap} (set NUOBDD_ENUM_CAP to raise it)")]
    EnumerationCap { arity: usize, cap: usize },

    #[error("invalid program: {0}")]
    InvalidProgram(String),

    #[error("variable orders differ between operands")]
    OrderMismatch,

    #[error("semantics mismatch: {0}")]
    SemanticsMismatch(String),

    #[error("operation refused: {0}")]
    Refused(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
