use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix ({a}, {b}; {c}, {d}) does not have determinant 1")]
    NotUnimodular { a: String, b: String, c: String, d: String },
    #[error("invalid cusp {0}")]
    InvalidCusp(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("endpoints must be distinct cusps")]
    SameCusp,
    #[error("group algebra orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("weights must be even and non-negative, got {0}")]
    OddWeight(i64),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
