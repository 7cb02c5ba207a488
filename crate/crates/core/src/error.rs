use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("elements live in different rings (k = {left} and k = {right})")]
    ContextMismatch { left: u32, right: u32 },
    #[error("division by an element that vanishes at phi")]
    DivisionByZero,
    #[error("the zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    #[error("interval must not be empty: {0}")]
    EmptyInterval(String),
    #[error("certification failed: {0}")]
    Uncertified(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
