use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u64),

    #[error("{divisor} is not a divisor of {n}")]
    InvalidDivisor { divisor: u64, n: u64 },

    #[error("divisor {divisor} of {n} is trivial here: {reason}")]
    TrivialDivisor {
        divisor: u64,
        n: u64,
        reason: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least {min}, got {found}")]
    InvalidDimension { min: usize, found: usize },

    #[error("point sets must be nonempty")]
    EmptySet,

    #[error("duplicate point {0:?}")]
    DuplicatePoint(Vec<u64>),

    #[error("coordinate {value} is not reduced modulo {n}")]
    UnreducedCoordinate { value: u64, n: u64 },

    #[error("{q} is not an exact prime-power divisor of {n}")]
    NotPrimePowerComponent { q: u64, n: u64 },

    #[error("modulus {0} is not square-free")]
    NotSquareFree(u64),

    #[error("expected {expected} local components, got {found}")]
    ComponentMismatch { expected: usize, found: usize },

    #[error("expected modulus {expected}, got {found}")]
    ModulusMismatch { expected: u64, found: u64 },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("matrix is not skew-symmetric modulo {0}")]
    NotSkewSymmetric(u64),

    #[error("requested {requested} points but the ambient space has only {available}")]
    SizeTooLarge { requested: u128, available: u128 },

    #[error("{what}: needs {required}, budget is {limit}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    #[error("{0}")]
    Parse(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
