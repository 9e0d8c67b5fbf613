use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("stream gap at t = {t}: expected a 0.1 s step")]
    Gap { t: f64 },

    #[error("samples are not sorted by time (t = {t} follows {prev})")]
    Unsorted { prev: f64, t: f64 },

    #[error("invalid sample at t = {t}: {reason}")]
    InvalidSample { t: f64, reason: String },

    #[error("unrecoverable input at t = {t}: {reason}")]
    UnrecoverableInput { t: f64, reason: String },

    #[error("observation {0} has no sequences after filtering")]
    EmptyObservation(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("pattern kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },

    #[error("jaccard similarity is undefined for two empty sets")]
    UndefinedJaccard,

    #[error("no observations for position `{0}`")]
    MissingClass(String),

    #[error("labels are degenerate: only `{0}` present")]
    DegenerateLabels(String),

    #[error("{0} distinct labels found; only binary classification is supported")]
    MultiClass(usize),

    #[error("feature matrix has no columns")]
    ZeroFeatures,

    #[error("model has not been fitted")]
    NotFitted,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Wraps `self` with the name of the pipeline stage that produced it.
    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
