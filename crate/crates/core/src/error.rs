use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("incompatible field orders {0} and {1}")]
    OrderMismatch(u32, u32),
    #[error("field order {0} not supported (max {max})", max = crate::scalar::MAX_ORDER)]
    UnsupportedOrder(u32),
    #[error("malformed scalar {0:?}")]
    MalformedScalar(String),
    #[error("missing structure data: {0}")]
    MissingStructure(&'static str),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not convolution invertible: {0}")]
    NotInvertible(String),
    #[error("nilpotency not reached within {0} convolution powers")]
    NotNilpotent(usize),
    #[error("certificate was issued for a different base presentation")]
    CertificateMismatch,
    #[error("{check} failed at {witness}")]
    CheckFailed { check: String, witness: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
