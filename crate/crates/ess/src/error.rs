//! Crate-wide error type.
//!
//! Errors split into two broad classes that callers (notably the CLI) treat
//! differently: I/O and syntax problems (`Io`, `Parse`, `InvalidSweep`) versus
//! semantic failures of otherwise well-formed input (`Validation`, `Empty*`,
//! `Ranking`).

use std::path::PathBuf;

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Reading or writing a file failed.
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A document is syntactically malformed.
    #[error("parse error: {message}")]
    Parse { message: String },

    /// A well-formed document or value violates a semantic rule.
    /// `subject` names the offending entity (typically a technique id).
    #[error("validation error: {subject}: field `{field}`: {message}")]
    Validation {
        subject: String,
        field: String,
        message: String,
    },

    /// An operation that needs at least one technique received none.
    #[error("no techniques to evaluate")]
    EmptyCatalog,

    /// A modality filter left nothing to evaluate.
    #[error("no applicable techniques for modality `{modality}`")]
    NoApplicableTechniques { modality: String },

    /// Two rankings could not be correlated.
    #[error("ranking error: {message}")]
    Ranking { message: String },

    /// A sweep specification is unusable.
    #[error("invalid sweep: {message}")]
    InvalidSweep { message: String },
}

impl Error {
    pub(crate) fn validation(
        subject: impl Into<String>,
        field: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Error::Validation {
            subject: subject.into(),
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn parse(message: impl Into<String>) -> Self {
        Error::Parse {
            message: message.into(),
        }
    }

    /// True for errors caused by unreadable or unparseable input rather than
    /// by the meaning of the data.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Io { .. } | Error::Parse { .. } | Error::InvalidSweep { .. }
        )
    }
}
