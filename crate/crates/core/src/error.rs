use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational `{0}` (expected p/q or an integer)")]
    ParseRational(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{vector} is not a basis vector of {module}")]
    NotInModule { vector: String, module: String },
    #[error("{0} is reducible; use one of its constituents")]
    Reducible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
