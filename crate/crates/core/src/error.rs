use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("a prime set needs at least two distinct primes, got {0}")]
    TooFewPrimes(usize),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("resource limit exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        needed: u64,
        cap: u64,
    },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed file: {0}")]
    Format(String),
}

impl Error {
    /// Process exit code contract: 1 invalid arguments, 2 resource caps.
    /// (Exit 3, "no result within budget", is not an error; searches
    /// return `None` for that case.)
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) | Error::NotPrime(_) | Error::TooFewPrimes(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
