//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Too few observations for the requested computation.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The data are degenerate (e.g. zero variance) and the statistic is undefined.
    #[error("degenerate data: {0}")]
    DegenerateData(String),

    /// The sample size is outside the supported range of the procedure.
    #[error("unsupported sample size: {0}")]
    UnsupportedSize(String),

    /// The caller misused an interface (bad configuration, empty input, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// A data file could not be interpreted (bad manifest, non-numeric cell, ...).
    #[error("load error: {0}")]
    Load(String),

    /// An underlying I/O operation failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
