use thiserror::Error;

/// Errors raised by the library.
///
/// Variants ending in `Mismatch` or `NonIntegralResult` signal an internal
/// inconsistency; they must never be observed on validated inputs.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank {rank} for type {family} (minimum {min})")]
    InvalidRank {
        family: char,
        rank: usize,
        min: usize,
    },
    #[error("{0} is not a prime greater than 2")]
    InvalidPrime(u32),
    #[error("weight has {got} coordinates, expected {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight must be nonzero")]
    ZeroWeight,
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),

    #[error("partition sums to {got}, expected {expected}")]
    BadPartitionSum { expected: usize, got: usize },
    #[error("part {part} exceeds p = {p}")]
    PartExceedsP { part: usize, p: u32 },
    #[error("partition {partition:?} is not a unipotent class of type {family}: {reason}")]
    ParityViolation {
        family: char,
        partition: Vec<usize>,
        reason: String,
    },
    #[error("partition is the identity class (all parts 1)")]
    IdentityClass,
    #[error("class lies in a subgroup of rank m = {m}, which is not less than r = {r}")]
    MNotLessThanR { m: usize, r: usize },

    #[error("tau of {0} is not an integer")]
    NonIntegralResult(String),
    #[error("label sum {definition} disagrees with truncated sum {truncated}")]
    LemmaMismatch { definition: i64, truncated: i64 },

    #[error("{what} exceeds the size limit ({size} > {limit})")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("malformed Gamma-character: {0}")]
    MalformedCharacter(String),

    #[error("block size {size} exceeds p = {p}")]
    BlockTooLarge { size: usize, p: u32 },

    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("matrix carries no grading")]
    NoGrading,
    #[error("matrices live over different fields (p = {0} and p = {1})")]
    FieldMismatch(u32, u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
