use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("undefined root count: zero polynomial")]
    ZeroPolynomial,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("not in the order: {0}")]
    NotIntegral(String),
    #[error("not a reflection: {0}")]
    NotReflection(String),
    #[error("vector is not {0}")]
    Causality(&'static str),
    #[error("matrix does not preserve the form")]
    NotIsometry,
    #[error("reducible: {0}")]
    Reducible(String),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("not a Salem polynomial: {0}")]
    NotSalem(String),
    #[error("not loxodromic: {0}")]
    NotLoxodromic(String),
    #[error("precision budget exhausted: {0}")]
    Precision(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
