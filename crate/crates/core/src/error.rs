use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// The CLI maps variants onto exit codes: configuration-type errors exit
/// with 2, numerical failures with 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} outside supported range |n| <= {limit}")]
    OutOfRange { index: i64, limit: i64 },

    #[error("interval test inconclusive at index {index}: coding boundary within 128-bit enclosure")]
    Inconclusive { index: i64 },

    #[error("incompatible system kinds: {0}")]
    IncompatibleKinds(String),

    #[error("mode error: {0}")]
    Mode(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("configuration error: {}", .0.join("; "))]
    Config(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(vec![msg.into()])
    }
}

pub type Result<T> = std::result::Result<T, Error>;
