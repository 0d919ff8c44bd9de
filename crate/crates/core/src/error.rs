use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("statistic is undefined for the empty partition")]
    EmptyPartition,

    #[error("parts must be positive and weakly decreasing: {0:?}")]
    MalformedPartition(Vec<u32>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a valid Dyson symbol: {0}")]
    InvalidDysonSymbol(String),

    #[error("not a valid marked Dyson symbol: {0}")]
    InvalidMarkedSymbol(String),

    #[error("balanced count needs the first partition to be at least as long as the second ({long} < {short})")]
    LengthOrder { long: usize, short: usize },

    #[error("symbol has crank {actual}, expected {expected}")]
    CrankMismatch { expected: i64, actual: i64 },

    #[error("marked symbol is not strict at level {0}")]
    NotStrict(usize),

    #[error("integer overflow while counting at n = {0}")]
    Overflow(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
