//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Schema definition or schema/file mismatch problems.
    #[error("schema error: {0}")]
    Schema(String),

    /// A cell or line that could not be parsed; carries its 1-based
    /// data-row (or line) position.
    #[error("parse error at row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("empty dataset")]
    EmptyDataset,

    #[error("unknown label: {0:?}")]
    UnknownLabel(String),

    #[error("unknown vertex: {0:?}")]
    UnknownVertex(String),

    #[error("class {0:?} has no members")]
    EmptyClass(String),

    #[error("need >= 2 classes, got {0}")]
    NeedTwoClasses(usize),

    /// Parameter outside its documented domain (fractions, percentile
    /// bounds, thresholds, smoothing constants).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Representativeness index is undefined for an empty evidence set.
    #[error("empty evidence set: representativeness index undefined")]
    EmptyEvidence,

    #[error("empty input: {0}")]
    EmptyInput(String),

    /// ROC construction requires both a positive and a negative example.
    #[error("single-class truth: need at least one positive and one negative")]
    SingleClassTruth,

    #[error("self-loop rejected at line {line}: {vertex:?}")]
    SelfLoop { line: usize, vertex: String },

    /// Group search exceeded the per-level candidate cap.
    #[error("candidate overflow at level {level}: {count} candidates exceed cap {cap}")]
    CandidateOverflow {
        level: usize,
        count: usize,
        cap: usize,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors a caller should treat as configuration/usage
    /// problems rather than runtime data failures.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Schema(_) | Error::InvalidParameter(_))
    }
}
