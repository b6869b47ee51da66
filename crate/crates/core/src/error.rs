use thiserror::Error;

use crate::rewrite::EquivalenceClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed token `{token}` at position {position}")]
    MalformedToken { token: String, position: usize },

    #[error("generator index {index} out of range 1..={max} for n = {n}", max = n - 1)]
    IndexOutOfRange { index: usize, n: usize },

    #[error("band indices ({t},{s}) must satisfy 1 <= s < t <= {n}")]
    BandIndexOutOfRange { t: usize, s: usize, n: usize },

    #[error("strand count must be at least 2, got {0}")]
    TooFewStrands(usize),

    #[error("strand count {n} exceeds the supported maximum {max}")]
    TooManyStrands { n: usize, max: usize },

    #[error("words live over different strand counts ({left} vs {right})")]
    ContextMismatch { left: usize, right: usize },

    #[error("word contains singular letters and has no inverse")]
    NonInvertible,

    #[error("word contains singular letters; a braid word was expected")]
    XLettersPresent,

    #[error("word contains inverse letters; a positive word was expected")]
    NotPositive,

    #[error("search exceeded the cap of {cap} members")]
    CapExceeded {
        cap: usize,
        /// What had been enumerated when the cap was hit, when available.
        partial: Option<EquivalenceClass>,
    },

    #[error("strand count {n} exceeds the configured bound {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("writing output failed: {0}")]
    Output(#[from] std::io::Error),
}

impl Error {
    /// Resource limits as opposed to bad input or bugs.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::BoundExceeded { .. })
    }

    pub(crate) fn cap(cap: usize) -> Self {
        Error::CapExceeded { cap, partial: None }
    }
}
