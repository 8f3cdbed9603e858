use thiserror::Error;

use crate::model::{Timestamp, WidgetKind};

/// Failures of the in-memory provenance operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProvenanceError {
    #[error("value `{found}` does not fit a {expected} widget")]
    KindMismatch { expected: WidgetKind, found: String },

    #[error("invalid value domain: {0}")]
    InvalidDomain(String),

    #[error("value outside the widget domain: {0}")]
    DomainViolation(String),

    #[error("timestamp {got} precedes the last recorded timestamp {last}")]
    NonMonotonicTimestamp { last: Timestamp, got: Timestamp },

    #[error("entry {index} is out of timestamp order")]
    UnsortedEntries { index: usize },

    #[error("the provenance log is empty")]
    EmptyLog,

    #[error("no historical state matches the recovery target")]
    NoSuchState,
}

pub type Result<T, E = ProvenanceError> = std::result::Result<T, E>;
