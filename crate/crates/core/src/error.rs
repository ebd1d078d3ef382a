use thiserror::Error;

/// Errors produced by the group-theoretic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("index {index} out of range 0..={rank}")]
    IndexOutOfRange { index: u32, rank: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("oracle scale exceeded: {what} is {actual}, cap is {cap}")]
    OracleScaleExceeded {
        what: &'static str,
        actual: String,
        cap: u64,
    },

    #[error("the first subgroup is not contained in the second")]
    NotContained,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("method unavailable: {0}")]
    MethodUnavailable(String),

    #[error("missing component data for prime {0}")]
    MissingComponent(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
