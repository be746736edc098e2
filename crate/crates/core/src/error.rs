use std::path::PathBuf;

use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A^H| = {0:e})")]
    NotHermitian(f64),

    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("derivative of order {order} is not available at x = {at}")]
    DerivativeUnavailable { order: usize, at: f64 },

    #[error("support violation: entry {index} has weight {weight:e} where the reference has none")]
    SupportViolation { index: usize, weight: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("unitarity check failed (max |U^H U - I| = {0:e})")]
    NotUnitary(f64),

    #[error("trace preservation check failed (max |sum M^H M - I| = {0:e})")]
    NotTracePreserving(f64),

    #[error("channel is not unital (max |sum M M^H - I| = {0:e})")]
    NotUnital(f64),

    #[error("matrix is not stochastic: {0}")]
    NotStochastic(String),

    #[error("matrix is not bi-stochastic: {0}")]
    NotBiStochastic(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("Sinkhorn normalization failed after {iterations} iterations (residual {residual:e})")]
    SinkhornFailed { iterations: usize, residual: f64 },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
