use thiserror::Error;

use crate::grid::Cell;

/// Errors raised across the crate.
///
/// Every variant maps to a stable machine tag (see [`Error::tag`]) which the
/// command-line front end prints alongside the human readable message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Parse(String),

    #[error("invalid cell ({row},{col}): indices start at 1")]
    InvalidCell { row: i64, col: i64 },

    #[error("duplicate anchor ({0})")]
    DuplicateAnchor(Cell),

    #[error("configuration is not connected")]
    NotConnected,

    #[error("configuration is not special")]
    NotSpecial,

    #[error("vertex set is not admissible for the configuration")]
    NotAdmissible,

    #[error("components were built over different configurations")]
    MismatchedConfiguration,

    #[error("{what} cap of {cap} exceeded")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("degree cap {cap} exceeded (element of degree {degree})")]
    DegreeCapExceeded { cap: u32, degree: u32 },

    #[error("variable ordering does not realize the marking: {0}")]
    VerificationFailed(String),

    #[error("quadratic certificate failed Gröbner verification: {0}")]
    CertificateVerificationFailed(String),

    #[error("table entry at {0} lies outside the configuration's vertex set")]
    SupportViolation(Cell),

    #[error("variable {0} is not part of the ranking")]
    UnknownVariable(Cell),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
}

impl Error {
    /// Stable one-word tag used in machine-readable diagnostics.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::Parse(_) => "PARSE",
            Error::InvalidCell { .. } => "INVALID_CELL",
            Error::DuplicateAnchor(_) => "DUPLICATE_ANCHOR",
            Error::NotConnected => "NOT_CONNECTED",
            Error::NotSpecial => "NOT_SPECIAL",
            Error::NotAdmissible => "NOT_ADMISSIBLE",
            Error::MismatchedConfiguration => "MISMATCHED_CONFIGURATION",
            Error::CapExceeded { .. } => "CAP_EXCEEDED",
            Error::DegreeCapExceeded { .. } => "DEGREE_CAP_EXCEEDED",
            Error::VerificationFailed(_) => "VERIFICATION_FAILED",
            Error::CertificateVerificationFailed(_) => "CERTIFICATE_VERIFICATION_FAILED",
            Error::SupportViolation(_) => "SUPPORT_VIOLATION",
            Error::UnknownVariable(_) => "UNKNOWN_VARIABLE",
            Error::UnknownFixture(_) => "UNKNOWN_FIXTURE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
