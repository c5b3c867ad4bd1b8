use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no path: {0}")]
    NoPath(String),

    #[error("eliminated block is singular (pivot failure at size {size})")]
    SingularBlock { size: usize },

    #[error(
        "fixed-point iteration did not converge after {iterations} sweeps (residual {residual:e})"
    )]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("point {0:?} has zero total kernel weight to the sample and lies in no region")]
    IsolatedPoint(Vec<f64>),

    #[error("region `{0}` contains no nodes")]
    EmptyRegion(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("linear algebra backend: {0}")]
    Backend(String),

    #[error("{experiment} at n = {n}, seed {seed}: {source}")]
    Experiment {
        experiment: String,
        n: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
