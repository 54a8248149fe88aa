//! File formats: the JSON model document, run configuration and reports.

pub mod config;
pub mod document;
pub mod report;

pub use config::{RunConfig, SEED_ENV};
pub use document::{load_model, load_model_str, save_model, save_model_string, ModelDocument, SCHEMA_VERSION};
pub use report::{
    certificate_report, classification_report, overlap_rows, write_overlaps_csv, CertificateReport,
    ClassificationReport, OverlapRow,
};

use std::path::PathBuf;

/// Failures while reading or writing files.
#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
    /// Malformed JSON or a field of the wrong shape.
    #[error("schema error at `{field}` (line {line}, column {column}): {message}")]
    Schema {
        field: String,
        line: usize,
        column: usize,
        message: String,
    },
    /// Well-formed document describing an invalid model.
    #[error("invalid model: {0}")]
    Model(#[from] crate::error::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub(crate) fn read_file(path: &std::path::Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn write_file(path: &std::path::Path, contents: &str) -> Result<(), IoError> {
    std::fs::write(path, contents).map_err(|source| IoError::File {
        path: path.to_path_buf(),
        source,
    })
}
