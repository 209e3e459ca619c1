use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {order} exceeds the bound {bound}")]
    FieldTooLarge { order: u128, bound: u64 },
    #[error("field of order {0} has no conjugation a -> a^q (order is not a square)")]
    NoConjugation(u64),
    #[error("zero has no multiplicative order, inverse or logarithm")]
    ZeroElement,
    #[error("polynomial has a zero constant term")]
    ZeroConstantTerm,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("work bound exceeded: {what} needs {needed}, bound is {bound}")]
    WorkBound {
        what: &'static str,
        needed: u128,
        bound: u128,
    },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for errors caused by a configured size or work limit.
    pub fn is_bound(&self) -> bool {
        matches!(self, Error::FieldTooLarge { .. } | Error::WorkBound { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
