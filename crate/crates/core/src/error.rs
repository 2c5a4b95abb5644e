use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty family")]
    EmptyFamily,

    #[error("invalid triangle {0:?}: vertices must be distinct")]
    DegenerateTriangle([u32; 3]),

    #[error("invalid edge ({0}, {0}): endpoints must be distinct")]
    DegenerateEdge(u32),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no positive eigenvalue (matrix has rank 0)")]
    NoPositiveEigenvalue,

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("N = {n} is below the Frobenius threshold {threshold} for a = {a}")]
    BelowFrobeniusThreshold { a: u64, n: u64, threshold: u64 },

    #[error("numerical inconsistency: {0}")]
    Numerical(String),

    #[error("canonical check budget exceeded: {0}")]
    CanonicalBudget(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
