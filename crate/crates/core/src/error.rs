//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes identically after substitution: {0}")]
    SpecializationPole(String),

    #[error("expected a polynomial: {0}")]
    NonPolynomial(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("degree bound exceeded: need {needed}, bound {bound}")]
    DegreeBound { needed: usize, bound: usize },

    #[error("conjugacy class data is not generic")]
    NonGeneric,

    #[error("inconsistent shape: {0}")]
    ShapeMismatch(String),

    #[error("cache format version mismatch: found {found}, expected {expected}")]
    CacheVersion { found: u32, expected: u32 },

    #[error("cache I/O: {0}")]
    CacheIo(String),

    #[error("refusing oversized enumeration: {0}")]
    SizeGuard(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
