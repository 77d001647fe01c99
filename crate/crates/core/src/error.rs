use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A special function was evaluated outside its domain.
    #[error("{function}: argument outside domain ({detail})")]
    Domain {
        function: &'static str,
        detail: String,
    },

    /// Distribution or model parameters violate their invariants.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("precision matrix is not numerically positive definite (dimension {dim})")]
    Factorization { dim: usize },

    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error:e}")]
    Quadrature { estimate: f64, error: f64 },

    /// An update failed inside a running chain.
    #[error("chain failed at iteration {iteration} while updating {parameter}: {source}")]
    Chain {
        iteration: usize,
        parameter: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("need at least {needed} retained draws, have {have}")]
    InsufficientSamples { needed: usize, have: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("fold {fold} has {rows} rows; every fold needs at least 2")]
    FoldTooSmall { fold: usize, rows: usize },

    #[error("{path}: line {line}, column {column}: {message}")]
    Parse {
        path: String,
        line: u64,
        column: usize,
        message: String,
    },

    #[error("{path}: line {line} has {found} fields, expected {expected}")]
    RaggedRow {
        path: String,
        line: u64,
        found: usize,
        expected: usize,
    },

    #[error("{path}: no data rows")]
    EmptyDataset { path: String },

    #[error("{0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Stable, machine-parsable class name used by the CLI's error line.
    pub fn class(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Parameter(_) => "parameter",
            Error::Factorization { .. } => "factorization",
            Error::Quadrature { .. } => "quadrature",
            Error::Chain { .. } => "chain",
            Error::InsufficientSamples { .. } => "insufficient-samples",
            Error::Dimension(_) => "dimension",
            Error::FoldTooSmall { .. } => "fold-too-small",
            Error::Parse { .. } => "parse",
            Error::RaggedRow { .. } => "ragged-row",
            Error::EmptyDataset { .. } => "empty-dataset",
            Error::Config(_) => "config",
            Error::Io { .. } => "io",
        }
    }

    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
