use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A caller supplied parameters outside an operation's domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An internal identity failed (negative transitive count, inexact
    /// division by (n-1)!, ...). Indicates a bad input sequence or a bug.
    #[error("consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::Error::InvalidParameter(format!($($arg)*))
    };
}

macro_rules! inconsistent {
    ($($arg:tt)*) => {
        $crate::Error::Consistency(format!($($arg)*))
    };
}

pub(crate) use {inconsistent, invalid};
