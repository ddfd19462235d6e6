use thiserror::Error;

use crate::linalg::Ring;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("operation `{op}` is not supported over {ring}")]
    UnsupportedRing { ring: Ring, op: &'static str },

    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },

    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u32, right: u32 },

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("not a chain complex: d_{degree} o d_{} is nonzero", degree + 1)]
    InvalidComplex { degree: i64 },

    #[error("invalid DGA: {0}")]
    InvalidDga(String),

    #[error("unsupported truncation at degree {degree}: quotient has torsion {torsion:?}")]
    UnsupportedTruncation { degree: i64, torsion: Vec<String> },

    #[error("homology ring unsupported: {0}")]
    MixedTorsion(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("parity violation at odd prime: {0}")]
    Parity(String),

    #[error("invalid differential specification: {0}")]
    InvalidSpec(String),

    #[error("E-infinity is inconclusive: possible differentials {0:?}")]
    Inconclusive(Vec<((i64, i64), (i64, i64))>),

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
