//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by grid, kernel, spectral, and filtering operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Two objects that must share a grid were built on different grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A vector or matrix has the wrong length for the grid or operation.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An argument fails a precondition that is not covered by a more
    /// specific variant.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A matrix that must be Hermitian is not, within tolerance.
    #[error("matrix is not Hermitian: max asymmetry {defect:.3e} exceeds {tol:.3e}")]
    NotHermitian { defect: f64, tol: f64 },

    /// A matrix violates the invariants promised by its tag.
    #[error("kernel tag violation: {0}")]
    TagViolation(String),

    /// A kernel-kind decomposition met an eigenvalue below the negativity
    /// floor, so the matrix is not positive semidefinite.
    #[error("indefinite kernel: eigenvalue {value:.6e} at position {index}")]
    IndefiniteKernel { index: usize, value: f64 },

    /// An index points outside the valid range.
    #[error("index {index} out of range for {what} of length {len}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    /// A transfer with a nonzero constant term needs every mode of the
    /// discrete operator, but the decomposition was truncated.
    #[error("constant term requires a full decomposition: have {got} of {need} modes")]
    NeedsFullDecomposition { got: usize, need: usize },

    /// The kernel carries no usable information for the requested operation.
    #[error("degenerate kernel: {0}")]
    DegenerateKernel(String),

    /// A linear solve failed because the system is singular.
    #[error("singular linear system: {0}")]
    SingularSystem(String),

    /// Equality constraints are rank deficient.
    #[error("rank-deficient constraints: rank {rank}, need {need}")]
    RankDeficient { rank: usize, need: usize },

    /// A point lies outside the declared domain of a kernel rule.
    #[error("point {value} outside domain [{lo}, {hi}]")]
    OutOfDomain { value: f64, lo: f64, hi: f64 },

    /// Model abscissae do not match the eigenvalues they are applied to.
    #[error("spectrum mismatch: {0}")]
    SpectrumMismatch(String),

    /// A CSV file could not be parsed.
    #[error("csv: {0}")]
    Csv(String),

    /// An underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
