use thiserror::Error;

/// Errors raised by the state-space toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),

    #[error("expected a {expected}x{expected} matrix, got {got}x{got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("matrix data has {len} entries, expected {dim}x{dim}")]
    BadShape { dim: usize, len: usize },

    #[error("matrix entry ({0}, {1}) is not finite")]
    NonFinite(usize, usize),

    #[error("index ({i}, {j}) out of range for dimension {dim}")]
    IndexOutOfRange { dim: usize, i: usize, j: usize },

    #[error("matrix is not Hermitian (max |m - m^*| = {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("matrix is not traceless (trace {0:e})")]
    NotTraceless(f64),

    #[error("negative eigenvalue {0:e}")]
    NegativeEigenvalue(f64),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("Bloch vector outside ball (|n| = {0})")]
    OutsideBlochBall(f64),

    #[error("state on the boundary of the state space (smallest eigenvalue {0:e})")]
    BoundaryState(f64),

    #[error("parameter {name} = {value} outside [0, 1]")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("channel needs at least one Kraus operator")]
    EmptyKraus,

    #[error("Kraus operators are not trace preserving (residual {0:e})")]
    NotTracePreserving(f64),

    #[error("invalid sweep configuration: {0}")]
    InvalidSweep(String),
}

pub type Result<T> = std::result::Result<T, Error>;
