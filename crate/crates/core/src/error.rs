//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("matrix is not Hermitian: ||H - H^dagger|| = {violation:e}")]
    NotHermitian { violation: f64 },

    #[error("quaternion basis mismatch: {left:?} vs {right:?}")]
    BasisMismatch {
        left: crate::algebra::QuatBasis,
        right: crate::algebra::QuatBasis,
    },

    #[error("velocity must satisfy |beta| < 1, got beta = {beta}")]
    Superluminal { beta: f64 },

    #[error("gauge parameter beta must be nonzero")]
    ZeroBeta,

    #[error("point z = {z} lies outside the cavity [0, {length}]")]
    OutsideCavity { z: f64, length: f64 },

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),

    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        expected: Vec<usize>,
        got: Vec<usize>,
    },

    #[error("inconsistent constants: c^2 eps0 mu0 - 1 = {deviation:e}")]
    InconsistentConstants { deviation: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Fock dimension {requested} exceeds cap {cap}")]
    DimensionCap { requested: usize, cap: usize },

    #[error("operator is singular: {0}")]
    Singular(String),

    #[error("config: {0}")]
    Config(String),

    #[error("snapshot format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
