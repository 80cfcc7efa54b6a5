use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {rejected} of {total} records malformed, input is probably not {format}", path.display())]
    MostlyMalformed {
        path: PathBuf,
        rejected: usize,
        total: usize,
        format: String,
    },

    #[error("{}: {message}", path.display())]
    Parse { path: PathBuf, message: String },

    #[error("no usable documents")]
    NoDocuments,

    #[error("empty group")]
    EmptyGroup,

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("degenerate authority distribution")]
    DegenerateAuthority,

    #[error("threshold {0} outside (0, 1]")]
    InvalidThreshold(f64),

    #[error("topic index {index} out of range for {k} topics")]
    TopicOutOfRange { index: usize, k: usize },

    #[error("term {0:?} is not in the vocabulary")]
    UnknownTerm(String),

    #[error("{k} topics requested but the vocabulary has only {vocab} terms")]
    TooManyTopics { k: usize, vocab: usize },

    #[error("invalid LDA config: {0}")]
    InvalidLdaConfig(String),

    #[error("models were trained on different vocabularies")]
    VocabularyMismatch,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("zero vector")]
    ZeroVector,

    #[error("zero variance")]
    ZeroVariance,

    #[error("need at least 3 paired samples, got {0}")]
    TooFewSamples(usize),

    #[error("factor undefined when the opinion-leader percentage is zero")]
    ZeroBaseline,

    #[error("insufficient overlap: {0} shared days in window")]
    InsufficientOverlap(usize),

    #[error("invalid price series: {0}")]
    InvalidPrices(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config: {0}")]
    Config(String),

    #[error("{}: schema version {found:?}, expected {expected:?}; rerun the `{stage}` stage", path.display())]
    SchemaMismatch {
        path: PathBuf,
        found: String,
        expected: String,
        stage: &'static str,
    },

    #[error("{} is missing; run the `{stage}` stage first", path.display())]
    MissingArtifact { path: PathBuf, stage: &'static str },

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures the caller can fix by changing config, inputs or
    /// by rerunning an earlier stage (CLI exit code 2).
    pub fn is_user_error(&self) -> bool {
        match self {
            Error::Config(_)
            | Error::SchemaMismatch { .. }
            | Error::MissingArtifact { .. }
            | Error::MostlyMalformed { .. }
            | Error::InvalidThreshold(_)
            | Error::InvalidLdaConfig(_)
            | Error::InvalidArgument(_) => true,
            Error::Stage { source, .. } => source.is_user_error(),
            _ => false,
        }
    }
}
