use thiserror::Error;

/// Errors raised by the numerical kernel, the Bloch layer and map ingestion.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NonHermitianInput { residual: f64 },

    #[error("Choi matrix is not Hermitian (residual {residual:.3e})")]
    NonHermitianChoi { residual: f64 },

    #[error("invalid dimension {0}: need d >= 2")]
    InvalidDimension(usize),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("map is not unital: ||Phi(I) - I||_F = {residual:.3e}")]
    NotUnital { residual: f64 },

    #[error("map is not Hermiticity-preserving (residual {residual:.3e})")]
    NotHermiticityPreserving { residual: f64 },

    #[error("map sends a traceless generator to an operator with trace {residual:.3e}")]
    NotTracePreserving { residual: f64 },

    #[error("matrix is not unitary: ||U^dag U - I||_F = {residual:.3e}")]
    NotUnitary { residual: f64 },

    #[error("sample rejected: {0}")]
    RejectedSample(String),

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
