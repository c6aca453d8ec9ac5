use thiserror::Error;

/// Errors raised by the matrix kernel, the bounds, the samplers and the
/// assignment oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, row {row} has {cols} columns")]
    NotSquare { rows: usize, row: usize, cols: usize },

    #[error("matrix is empty")]
    Empty,

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not symmetric: skew {skew:e} exceeds tolerance {tolerance:e}")]
    AsymmetricInput { skew: f64, tolerance: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPd { min_eigenvalue: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("exponent {0} outside the admissible range")]
    BadExponent(f64),

    #[error("variance at index {index} is not positive: {value}")]
    NonPositiveVariance { index: usize, value: f64 },

    #[error("Student-t degrees of freedom must exceed 2, got {0}")]
    BadDf(f64),

    #[error("too few samples: need at least {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("sample sets differ in shape: {left_n}x{left_dim} vs {right_n}x{right_dim}")]
    SizeMismatch {
        left_n: usize,
        left_dim: usize,
        right_n: usize,
        right_dim: usize,
    },

    #[error("problem size {n} exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid sample set: {0}")]
    InvalidSamples(String),
}

pub type Result<T> = std::result::Result<T, Error>;
