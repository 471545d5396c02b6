use thiserror::Error;

use crate::combinatorics::CliqueSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An adversary plan had no answer for a round it was asked about.
    #[error("execution fault: {0}")]
    ExecutionFault(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("search exhausted after {tried} candidates: {reason}")]
    SearchExhausted { reason: String, tried: u64 },

    /// A protocol file could not be read or does not match the schema.
    #[error("protocol file: {field}: {message}")]
    Load { field: String, message: String },

    /// A constructed certificate failed its re-execution check.
    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("search exhausted: no clique of size {target} (best found has size {})", best.len())]
    CliqueExhausted { target: usize, best: CliqueSet },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn exhausted(reason: impl Into<String>, tried: u64) -> Self {
        Error::SearchExhausted {
            reason: reason.into(),
            tried,
        }
    }

    pub(crate) fn load(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Load {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionViolated(msg.into())
    }

    pub(crate) fn rejected(msg: impl Into<String>) -> Self {
        Error::CertificateRejected(msg.into())
    }

    pub fn is_search_exhausted(&self) -> bool {
        matches!(
            self,
            Error::SearchExhausted { .. } | Error::CliqueExhausted { .. }
        )
    }

    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::PreconditionViolated(_))
    }
}
