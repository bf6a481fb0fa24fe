use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
///
/// Variants are grouped so the CLI can map them onto exit codes:
/// configuration problems, data/pipeline problems, and engine failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("size must be at least 1")]
    InvalidSize,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("file not found: {0}")]
    FileNotFound(PathBuf),

    #[error("empty CSV file (no header row)")]
    EmptyCsv,

    #[error("malformed row at line {line}: expected {expected} fields, got {got}")]
    MalformedRow {
        line: u64,
        expected: usize,
        got: usize,
    },

    #[error("unknown column `{0}`")]
    UnknownColumn(String),

    #[error("non-numeric cell in column `{column}`, row {row}: `{value}`")]
    NonNumericCell {
        column: String,
        row: usize,
        value: String,
    },

    #[error("fold {fold}, repetition {rep}: {source}")]
    RunContext {
        fold: usize,
        rep: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("report error: {0}")]
    Report(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Attach fold/repetition context to an engine error.
    pub fn in_run(self, fold: usize, rep: usize) -> Error {
        Error::RunContext {
            fold,
            rep,
            source: Box::new(self),
        }
    }
}
