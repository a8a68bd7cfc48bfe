use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared across the localization pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid floor plan: {0}")]
    InvalidPlan(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown room `{0}`")]
    UnknownRoom(String),

    #[error("unknown anchor `{0}`")]
    UnknownAnchor(String),

    #[error("insufficient data for fit: {0}")]
    InsufficientData(String),

    #[error("no model entry for room `{room}`, anchor `{anchor}`")]
    MissingModel { room: String, anchor: String },

    #[error("measurement shares only {common} anchors with the map point, {required} required")]
    InsufficientOverlap { common: usize, required: usize },

    #[error("no radio map point shares enough anchors with the measurement")]
    NoEligiblePoints,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("provenance mismatch: {0}")]
    ProvenanceMismatch(String),

    #[error("{}: {source}", path.display())]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {message}")]
    Parse { context: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
