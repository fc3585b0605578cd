use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group order {order} exceeds the configured bound {bound}")]
    OrderTooLarge { order: u128, bound: usize },
    #[error("element belongs to a different group")]
    GroupMismatch,
    #[error("{0} does not divide {1}")]
    NotDivisor(u64, u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("quantity is infinite for {0}")]
    Infinite(String),
    #[error("operation requires a cyclic group")]
    NotCyclic,
    #[error("search budget of {budget} nodes exceeded (estimated {estimate})")]
    BudgetExceeded { budget: u64, estimate: u128 },
    #[error("registry entries {0} and {1} predict different values")]
    RegistryConflict(String, String),
    #[error("fixture {0}: {1}")]
    Fixture(String, String),
    #[error("cannot parse {what}: `{token}`")]
    Parse { what: &'static str, token: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
