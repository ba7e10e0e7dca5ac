use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the expansion engine.
///
/// Every variant except [`Error::Parse`] is a domain error: the request was
/// well formed but outside what the operation accepts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order {order} is out of range for {what} (maximum {max})")]
    OrderOutOfRange {
        what: &'static str,
        order: u64,
        max: u64,
    },

    #[error("order must be at least {min} for {what}")]
    OrderTooSmall { what: &'static str, min: u64 },

    #[error("multiplicity vector has order {actual}, expected {expected}")]
    OrderMismatch { expected: u64, actual: u64 },

    #[error("derivatives up to order {needed} are required, {supplied} supplied")]
    MissingDerivative { needed: usize, supplied: usize },

    #[error("floating-point overflow: {0}")]
    Overflow(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed expansion document: {0}")]
    Parse(String),
}
