use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("Schur iteration did not converge after {sweeps} sweeps")]
    SchurNoConvergence { sweeps: usize },

    /// An eigenvalue of the projected matrix has non-negative real part.
    #[error("projected matrix is not stable (eigenvalue with real part {real_part:e})")]
    UnstableProjection { real_part: f64 },

    #[error("shifted matrix A + sI is singular for s = {shift:e}")]
    SingularShift { shift: f64 },

    #[error("dense system is singular")]
    SingularSystem,

    #[error("problem too large for {context}: {size} > {limit}")]
    TooLarge {
        context: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid sparse structure: {0}")]
    InvalidStructure(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
