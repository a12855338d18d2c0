use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("not a partition: {0}")]
    NotAPartition(String),

    #[error("size mismatch: expected total {expected}, got {actual}")]
    SizeMismatch { expected: u64, actual: u64 },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("color index {k} out of range 1..={max}")]
    ColorOutOfRange { k: usize, max: usize },

    #[error("partition {0} has more than {1} nonzero parts")]
    TooManyParts(String, usize),

    #[error("half-integer dimension {numerator}/2 (caller passed inconsistent data)")]
    HalfInteger { numerator: i64 },

    #[error("crystal axiom violated: {0}")]
    Axiom(String),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("no highest element reached after {0} raising steps")]
    RaisingDiverged(usize),

    #[error("component contains {0} highest elements")]
    NotHighestWeight(usize),

    #[error("element is not highest")]
    NotHighest,

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("invalid gl2 data: {0}")]
    InvalidGl2(String),

    #[error("polynomial is not symmetric")]
    NotSymmetric,

    #[error("negative coefficient for {0} in a Schur expansion")]
    NegativeCoefficient(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("enumeration budget exceeded: need about {needed} operations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("interpolation: {0}")]
    Interpolation(String),

    #[error("lemma witness check failed: {0}")]
    Witness(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
