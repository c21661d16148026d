use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("modulus must be at least 2 and below 2^31, got {0}")]
    BadModulus(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown graph name `{0}`")]
    UnknownGraph(String),

    #[error("no {what} found after {attempts} attempts ({params})")]
    RetryExhausted {
        what: &'static str,
        attempts: usize,
        params: String,
    },

    #[error("{what}: size {actual} exceeds the limit {limit}")]
    SizeGuard {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("enumeration needs {required} steps but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{side} checks are redundant; relation witness {witness:?}")]
    Redundant { side: &'static str, witness: Vec<u64> },

    #[error("chain condition violated: {0}")]
    NotAComplex(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
