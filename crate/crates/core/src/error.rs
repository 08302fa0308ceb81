use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the realization calculus.
///
/// Numerical preconditions (singular blocks, pole hits, diagonalizability)
/// are recoverable classifications: callers may retry with a different
/// tolerance, a different coordinate frame, or a fallback construction.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not diagonalizable at the given tolerance")]
    NotDiagonalizable,

    #[error("evaluation point {z} is a pole candidate: zI - A is singular at tolerance")]
    Pole { z: Complex64 },

    #[error("expected a scalar (1x1-valued) realization, got {p}x{m}")]
    NotScalar { p: usize, m: usize },

    #[error(
        "shifted feedthrough D_R - a_j I is singular for eigenvalue {eigenvalue} (index {index})"
    )]
    SingularDelta { index: usize, eigenvalue: Complex64 },

    #[error("unsupported composition case: {0}")]
    UnsupportedCase(String),

    #[error("circuit element parameter must be strictly positive: {0}")]
    NonPositiveElement(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("rank-deficient matrix: {0}")]
    RankDeficient(String),

    #[error("realization is not in canonical form: {0}")]
    NotCanonical(String),

    #[error("sample set is empty")]
    EmptySampleSet,

    #[error("non-finite entry: {0}")]
    NonFinite(String),

    #[error("iteration failed to converge: {0}")]
    ConvergenceFailure(String),

    #[error("network node {path}: {source}")]
    Network {
        path: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wrap an error with the path of the network node it occurred at.
    pub fn at_network_path(self, path: impl Into<String>) -> Error {
        Error::Network {
            path: path.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
