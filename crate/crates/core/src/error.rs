use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// The variants map onto the CLI exit-code contract: `Usage` and
/// `Unsupported` are caller mistakes, `Domain` means the parameters fall
/// outside the region where an inequality is stated.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
