use std::io;

use thiserror::Error;

/// Errors produced by the library and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A request exceeds a configured resource cap.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A table lookup outside the stored grid.
    #[error("index ({m}, {l}) outside table with mmax={mmax}, lmax={lmax}")]
    OutOfRange {
        m: usize,
        l: usize,
        mmax: usize,
        lmax: usize,
    },

    /// Two tables (or a table and a request) disagree on shape or labels.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Malformed input data (CSV/JSON tables, config files).
    #[error("parse error: {0}")]
    Parse(String),

    /// Invalid command-line usage that clap cannot detect on its own.
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
