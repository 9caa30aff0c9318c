use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Error)]
pub enum SqueezeError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The mean spin vanishes, so the perpendicular plane is undefined.
    #[error("degenerate direction: {0}")]
    Degenerate(String),

    /// The request exceeds what the operation can hold in memory.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Invalid command-line or configuration input; the message names the field.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, SqueezeError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(SqueezeError::Domain(msg.into()))
}
