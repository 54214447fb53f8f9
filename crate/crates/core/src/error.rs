use thiserror::Error;

use crate::oracle::SearchResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("feedback coefficients {0:?} do not define a primitive polynomial")]
    NotPrimitive(Vec<u8>),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the discrete logarithm of zero is undefined")]
    LogOfZero,
    #[error("{k} does not divide {n}")]
    NotADivisor { k: u64, n: u64 },
    #[error("cycle length {k} exceeds the splitting limit {max}")]
    KTooLarge { k: u64, max: u64 },
    #[error("alpha = 1 in GF({q}^{degree}); the translation fixed points are undefined")]
    DegenerateField { q: u64, degree: usize },
    #[error("an element of order {k} lies in a proper subfield (k divides {q}^{i} - 1)")]
    OrderTooSmall { k: u64, q: u64, i: u32 },
    #[error("state {index} is not followed by a de Bruijn neighbour")]
    NotAWalk { index: usize },
    #[error("colouring is not valid: {0}")]
    InvalidColouring(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("window not found")]
    NotFound,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("window lengths differ ({0} vs {1})")]
    WindowMismatch(usize, usize),
    #[error("could not carve the necklace graph into components of {t} vertices")]
    CarvingFailed { t: u64 },
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("search budget exceeded (best so far: {})", .0.best_count)]
    BudgetExceeded(Box<SearchResult>),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
