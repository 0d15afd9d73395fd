use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("band ({strips}, {shift}) is connected; gcd(n, s) = 1 so it is not a compound")]
    NotACompound { strips: u32, shift: u32 },

    #[error("mesh window has no interior vertex")]
    InsufficientWindow,

    #[error("operation needs a band specification; free offset triples are not supported here")]
    MissingBand,

    #[error("branch {requested} does not exist; available branches: {available}")]
    NoSuchBranch { requested: usize, available: String },

    #[error("malformed catalog: {0}")]
    Catalog(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
