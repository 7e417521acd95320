use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error("matrix is not symmetric (max asymmetry {asymmetry:.3e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("matrix is not orthogonal (deviation ||M^T M - I||_F = {deviation:.3e})")]
    NotOrthogonal { deviation: f64 },

    #[error("matrix is singular (smallest eigenvalue of A^T A = {min_eigenvalue:.3e})")]
    Singular { min_eigenvalue: f64 },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("matrix has parity -1 and is not in the image of the quaternion cover")]
    Reflection,

    #[error("zero quaternion has no inverse or direction")]
    ZeroQuaternion,

    #[error("quaternion is not unit (|q|^2 = {norm_sq:.17})")]
    NotUnit { norm_sq: f64 },

    #[error("vectors are linearly dependent at index {index}")]
    Dependent { index: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("ambiguous solution: {0}")]
    Ambiguous(String),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal energy {residual:.3e})")]
    Convergence { sweeps: usize, residual: f64 },

    #[error(
        "loop sampling too coarse between samples {index} and {next}: rotation step {angle:.3} rad"
    )]
    Resolution {
        index: usize,
        next: usize,
        angle: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
