use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("modulus {0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{what}: needs {needed} but the budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u64,
    },

    #[error("interpolation unstable: sample at q = {witness} disagrees with the fitted polynomial")]
    InterpolationUnstable { witness: u64 },

    #[error("ambiguous class matching across primes: {0}")]
    AmbiguousKey(String),

    #[error("field does not split: {0}")]
    FieldNotSplitting(String),

    #[error("undecided after {trials} trials: {what}")]
    Undecided { what: String, trials: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Coarse grouping of errors, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Resource,
    Invariant,
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidInput(_)
            | Error::NotPrime(_)
            | Error::DivisionByZero
            | Error::FieldNotSplitting(_)
            | Error::Json(_) => ErrorKind::Usage,
            Error::BudgetExceeded { .. } | Error::Undecided { .. } => ErrorKind::Resource,
            Error::InterpolationUnstable { .. } | Error::AmbiguousKey(_) | Error::Invariant(_) => {
                ErrorKind::Invariant
            }
        }
    }
}
