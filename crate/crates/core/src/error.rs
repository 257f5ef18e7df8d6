use thiserror::Error;

/// Errors raised by the arithmetic and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("method `{method}` does not support ({a}/{p}): {reason}")]
    UnsupportedMethod {
        method: &'static str,
        a: i64,
        p: u32,
        reason: String,
    },
    #[error("out of bounds: {0}")]
    OutOfBounds(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
