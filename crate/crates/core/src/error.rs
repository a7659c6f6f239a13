// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by graph loading, the numerical kernels and the harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty input: no edges found")]
    EmptyInput,

    #[error("node index {index} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { index: usize, node_count: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0} undefined on empty-edge graph")]
    EmptyEdgeSet(&'static str),

    #[error("no convergence after {iterations} iterations (estimate {estimate}, residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        estimate: f64,
        residual: f64,
        last_iterate: Vec<f64>,
    },

    #[error("Katz iteration diverged with alpha = {alpha}: alpha >= 1/lambda1")]
    KatzDivergence { alpha: f64 },

    #[error("refusing exhaustive search on {node_count} nodes (limit {limit})")]
    TooLarge { node_count: usize, limit: usize },

    #[error("sweep has no benchmark rows for the degree metric")]
    MissingBenchmark,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the CLI: 1 usage, 2 data, 3 numerical.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::InvalidParameter(_) => 1,
            Error::Parse { .. }
            | Error::EmptyInput
            | Error::NodeOutOfRange { .. }
            | Error::TooLarge { .. }
            | Error::MissingBenchmark
            | Error::Io { .. }
            | Error::Csv { .. } => 2,
            Error::EmptyEdgeSet(_) | Error::NoConvergence { .. } | Error::KatzDivergence { .. } => 3,
        }
    }
}
