//! File formats and command-line front end for [`pcg_core`].
//!
//! * [`format`]: network JSON and dataset CSV.
//! * [`report`]: JSON records for posteriors, CI decisions, discovery results
//!   and discounting reports, with variables referred to by name.
//! * [`cli`]: the `pcg` command.
//! * [`goldens`]: regenerates the committed reference values from the
//!   enumeration oracle.

pub mod cli;
pub mod format;
pub mod goldens;
pub mod report;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PcgError {
    #[error("IoError: {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("JsonError: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CsvError: {0}")]
    Csv(#[from] csv::Error),
    #[error("UnknownVariable: {0}")]
    UnknownVariable(String),
    #[error("UnknownState: {variable} has no state `{state}`")]
    UnknownState { variable: String, state: String },
    #[error("FormatError: {0}")]
    Format(String),
    #[error(transparent)]
    Graph(#[from] pcg_core::GraphError),
    #[error(transparent)]
    Network(#[from] pcg_core::NetworkError),
    #[error(transparent)]
    Ci(#[from] pcg_core::CiError),
    #[error(transparent)]
    Inference(#[from] pcg_core::InferenceError),
    #[error(transparent)]
    Discovery(#[from] pcg_core::DiscoveryError),
}

pub type Result<T> = std::result::Result<T, PcgError>;
