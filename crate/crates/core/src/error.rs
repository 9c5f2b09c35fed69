use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix of {0} is not positive definite")]
    NotPositiveDefinite(String),
    #[error("enumeration exceeded the cap of {cap} points (raise LATGLUE_CAP to allow more)")]
    EnumerationCap { cap: usize },
    #[error("negative enumeration bound {0}")]
    NegativeBound(String),
    #[error("{0} is not an element of the glue group")]
    NotInGlueGroup(String),
    #[error("{table} mismatch at row {row}: expected {expected}, computed {found}")]
    TableMismatch { table: &'static str, row: String, expected: String, found: String },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
