use thiserror::Error;

/// Errors raised by the series calculus and the vertex enumerators.
///
/// Variants are grouped by how a caller should react: bad input
/// (`Domain`, `InsufficientWindow`, `NotInvertible`, `Parse`), a resource
/// guard (`ResourceLimit`), or a broken internal invariant (`Consistency`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("insufficient window: {0}")]
    InsufficientWindow(String),

    #[error("series is not invertible: {0}")]
    NotInvertible(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceLimit(_))
    }

    pub fn is_consistency(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
