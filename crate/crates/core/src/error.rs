use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("division by zero in field arithmetic")]
    DivisionByZero,
    #[error("elements belong to different field contexts")]
    ContextMismatch,
    #[error("subfield degree {n} does not divide extension degree {m}")]
    NonDivisibleDegrees { n: usize, m: usize },
    #[error("subspaces have different ambient dimensions ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("evaluation points are linearly dependent over the base field")]
    DependentPoints,
    #[error("message polynomial has q-degree {got}, must be below {limit}")]
    DegreeTooHigh { got: usize, limit: usize },
    #[error("radius {tau} is not below the minimum distance {d}")]
    RadiusTooLarge { tau: usize, d: usize },
    #[error("computation needs {required} enumerations, budget allows {allowed}")]
    BudgetExceeded { required: String, allowed: u64 },
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
    #[error("i/o or format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
