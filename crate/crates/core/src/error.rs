use thiserror::Error;

/// Errors produced by fitting, distance, divergence and report operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty sample set")]
    EmptySamples,

    #[error("dimension mismatch: query has {query} coordinates, prototype has {prototype}")]
    DimensionMismatch { query: usize, prototype: usize },

    #[error("ragged columns: column {column} has {len} rows, expected {expected}")]
    RaggedColumns {
        column: usize,
        len: usize,
        expected: usize,
    },

    #[error("binning mismatch: densities must share lower bound, bin width and bin count")]
    BinningMismatch,

    #[error("invalid range: lo {lo} must be strictly below hi {hi}")]
    InvalidRange { lo: f64, hi: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("no prototypes to classify against")]
    NoPrototypes,

    #[error("invalid benchmark config: {0}")]
    InvalidConfig(String),

    #[error("csv parse error at line {line}: {message}")]
    Csv { line: u64, message: String },

    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
