use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised while building bases, operators and trajectories.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate basis: total particle number must be at least 1")]
    DegenerateBasis,

    #[error("empty fermion sector: {0}")]
    EmptySector(String),

    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator `{label}` is not hermitian (residual {residual:e})")]
    NotHermitian { label: String, residual: f64 },

    #[error("phase-difference operators need two distinct modes")]
    IdenticalModes,

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("eigendecomposition failed: {0}")]
    Eigen(String),

    #[error("RK4 norm drift {drift:e} exceeds {limit:e}; reduce the step size")]
    NormDrift { drift: f64, limit: f64 },

    #[error("expectation value of `{label}` has imaginary part {imag:e}")]
    ImaginaryExpectation { label: String, imag: f64 },

    #[error("negative variance {0:e} for `{1}`")]
    NegativeVariance(f64, String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code: 1 for configuration problems, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_)
            | Error::UnknownLabel(_)
            | Error::InvalidArgument(_)
            | Error::InvalidGrid(_)
            | Error::Io(_)
            | Error::Csv(_) => 1,
            _ => 2,
        }
    }
}
