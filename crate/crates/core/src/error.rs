use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("normalization error: {0}")]
    Normalization(String),
    #[error("constant vector generates the trivial class")]
    TrivialClass,
    #[error("division by zero")]
    DivisionByZero,
    #[error("enumeration budget exceeded: {needed} subgroups, bound {bound}")]
    Budget { needed: u128, bound: u128 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("pivot error: {0}")]
    Pivot(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
