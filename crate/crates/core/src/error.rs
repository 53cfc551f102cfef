use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian: entry ({row}, {col}) deviates from its conjugate partner by {deviation:e}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("matrix is not unitary: max |U U^dagger - I| = {residual:e}")]
    NotUnitary { residual: f64 },

    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("Wigner rotation supports rank k <= 2, got k = {0}")]
    UnsupportedRank(usize),

    #[error("amplitudes not normalized: {0}")]
    NotNormalized(String),

    #[error("zero state vector")]
    ZeroVector,

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("gate family mismatch: {0}")]
    FamilyMismatch(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
