use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field {p}^(2*{m}) exceeds the supported size 2^31")]
    SizeExceeded { p: u32, m: u32 },
    #[error("invalid modulus {0}")]
    BadModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{n} does not divide the group order {order}")]
    NotADivisor { n: u32, order: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("scaling vector has a zero entry at position {0}")]
    ZeroScalar(usize),
    #[error("exhaustive search needs {required} evaluations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("the zero code has no minimum distance")]
    EmptyCode,
    #[error("evaluation point {0} repeats an earlier point")]
    DuplicatePoint(usize),
    #[error("dimension {k} out of range for length {n}")]
    BadDimension { k: usize, n: usize },
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("cosets {0} and {1} intersect")]
    CosetCollision(usize, usize),
    #[error("invalid twisted code parameters: {0}")]
    BadSpec(String),
    #[error("target hull dimension {target} exceeds current hull dimension {hull}")]
    TargetTooLarge { target: usize, hull: usize },
    #[error("hull reduction needs q >= 3, got q = {0}")]
    UnsupportedField(u32),
    #[error("hull reduction to {target} produced hull dimension {got}")]
    ReductionFailed { target: usize, got: usize },
    #[error("hull basis admits no block standard form: {0}")]
    NonOrthonormalizable(String),
    #[error("level {l} invalid for [n={n}, k={k}]")]
    BadLevel { n: usize, k: usize, l: usize },
    #[error("parameters out of range: {0}")]
    BadRange(String),
    #[error("parse error: {0}")]
    Parse(String),
}
