use thiserror::Error;

use crate::text::Capability;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input is empty or whitespace-only")]
    EmptyInput,

    #[error("annotation provider `{provider}` failed: {message}")]
    AnnotationFailure { provider: String, message: String },

    #[error("document contains no word tokens")]
    EmptyDocument,

    #[error("rule `{rule_id}` requires the `{capability}` annotation layer")]
    MissingAnnotation {
        rule_id: String,
        capability: Capability,
    },

    #[error("provider `{provider}` failed: {message}")]
    ProviderFailure { provider: String, message: String },

    #[error("cosine similarity of a zero vector")]
    ZeroVector,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("source text is empty")]
    EmptySource,

    #[error("simplification is empty")]
    EmptySimplification,

    #[error("invalid spider axes: {0}")]
    InvalidAxes(String),

    #[error("sampling budget {budget} exceeds corpus size {corpus}")]
    BudgetExceedsCorpus { budget: usize, corpus: usize },

    #[error("prompt template `{0}` must contain exactly one {{excerpt}} slot")]
    MissingSlot(String),

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    #[error("degenerate task `{task}`: {reason}")]
    DegenerateTask { task: String, reason: String },

    #[error("unknown feature `{0}`")]
    UnknownFeature(String),

    #[error("invalid rule set: {0}")]
    InvalidRuleSet(String),

    #[error("malformed record at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn provider(provider: impl Into<String>, message: impl Into<String>) -> Self {
        Error::ProviderFailure {
            provider: provider.into(),
            message: message.into(),
        }
    }

    /// True for failures caused by an external model or service.
    pub fn is_provider_failure(&self) -> bool {
        matches!(
            self,
            Error::ProviderFailure { .. } | Error::AnnotationFailure { .. }
        )
    }
}
