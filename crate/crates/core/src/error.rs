use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported symbol: {0}")]
    UnsupportedSymbol(String),

    #[error("non-finite sample at angle {angle} (radius {radius})")]
    SingularSample { radius: f64, angle: f64 },

    #[error("radial path at angle {0} hits a singularity")]
    SingularRay(f64),

    #[error("degenerate symbol: {0}")]
    DegenerateSymbol(String),

    #[error("unresolved: {0}")]
    Unresolved(String),

    #[error("symbol is not in LMOA: {0}")]
    NotInLmoa(String),

    #[error("malformed symbol record: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag used in CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::UnsupportedSymbol(_) => "unsupported-symbol",
            Error::SingularSample { .. } => "singular-sample",
            Error::SingularRay(_) => "singular-ray",
            Error::DegenerateSymbol(_) => "degenerate-symbol",
            Error::Unresolved(_) => "unresolved",
            Error::NotInLmoa(_) => "not-in-lmoa",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
