use thiserror::Error;

/// Errors raised by the numerical kernels and matrix constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square with n >= 1 (got {rows} entries for n = {n})")]
    Shape { n: usize, rows: usize },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { asymmetry: f64, tolerance: f64 },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("starting vector is zero")]
    ZeroVector,

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("root scan isolated {found} sign changes, expected {expected}")]
    RootCountMismatch { found: usize, expected: usize },

    #[error("coefficient refit residual {residual:.3e} exceeds {bound:.3e}")]
    IllConditioned { residual: f64, bound: f64 },

    #[error("inner numerical range is not contained in the outer one (gap {gap:.3e})")]
    NotContained { gap: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
