use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cardinality {t} outside the supported range [{min}, {max}]")]
    CardinalityOutOfRange { t: usize, min: usize, max: usize },

    #[error("invalid weight for cardinality {t}: {reason}")]
    InvalidWeight { t: usize, reason: String },

    #[error("invalid hyperedge #{index}: {reason}")]
    InvalidHyperedge { index: usize, reason: String },

    #[error("node {node} out of range for {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("empty node subset")]
    EmptySubset,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("matrix is not symmetric (entry ({i}, {j}))")]
    NotSymmetric { i: usize, j: usize },

    #[error("eigensolver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("binarized Laplacian is disconnected: {} components (sizes {sizes:?}, first nodes {first_nodes:?})", sizes.len())]
    Disconnected {
        sizes: Vec<usize>,
        first_nodes: Vec<usize>,
    },

    #[error("need {needed} eigenvalues above {floor}, only {available} available")]
    InsufficientSpectrum {
        needed: usize,
        available: usize,
        floor: f64,
    },

    #[error("problem too large for exhaustive search: n = {n}, limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("no connected hypergraph after {attempts} attempts (last component sizes {last_sizes:?})")]
    GenerationFailed {
        attempts: usize,
        last_sizes: Vec<usize>,
    },

    #[error("metric undefined: {0}")]
    UndefinedMetric(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Disconnected { .. }
            | Error::InsufficientSpectrum { .. }
            | Error::GenerationFailed { .. } => 3,
            Error::NoConvergence { .. } | Error::UndefinedMetric(_) => 4,
            _ => 2,
        }
    }
}
