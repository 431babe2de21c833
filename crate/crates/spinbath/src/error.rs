use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian: max |M - M†| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("not a density matrix: {reason}")]
    InvalidDensity { reason: String },

    #[error("Bloch vector outside the unit ball: |r| = {norm}")]
    BlochOutOfBall { norm: f64 },

    #[error("linear system is singular to tolerance: |pivot| = {pivot:.3e} at step {step}")]
    SingularSystem { pivot: f64, step: usize },

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("steady-state residual {residual:.3e} exceeds bound {bound:.3e}")]
    ResidualTooLarge { residual: f64, bound: f64 },

    #[error(
        "integration step violates the stability guard: dt*(|H| + p1 + p2) = {value:.3e} > {limit}"
    )]
    UnstableStep { value: f64, limit: f64 },

    #[error(
        "integration drifted off the density-matrix manifold: correction {correction:.3e} per step"
    )]
    DriftExceeded { correction: f64 },

    #[error("no sign change in bracket [{lo}, {hi}]: no boundary in range")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("invalid sweep specification: {0}")]
    InvalidSweep(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
