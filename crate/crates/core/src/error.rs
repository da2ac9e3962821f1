use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation was applied to an input that does not meet its precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A denominator at genus `genus` had a prime factor above `2g+1`.
    #[error("denominator {denominator} at genus {genus} has a prime factor above {bound} (cofactor {cofactor})")]
    UnexpectedPrime {
        genus: u32,
        bound: u64,
        denominator: BigUint,
        cofactor: BigUint,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
