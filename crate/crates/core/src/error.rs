use num::BigInt;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid root system {letter}{rank}: {constraint}")]
    InvalidType {
        letter: char,
        rank: usize,
        constraint: String,
    },

    #[error("generator index {index} out of range 1..={rank}")]
    GeneratorIndex { index: usize, rank: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("budget exceeded: {what} needs more than {budget} elements")]
    BudgetExceeded { what: String, budget: usize },

    #[error("point lies on the wall <x, alpha> = {level} for the positive root {root:?}")]
    PointOnWall { root: Vec<i64>, level: BigInt },

    #[error("element does not have order dividing 2")]
    NotAnInvolution,

    #[error("vector {vector:?} is not an integer combination of the lattice generators")]
    NotInLattice { vector: Vec<BigInt> },

    #[error(
        "quotient is infinite: relations span rank {relations_rank} inside a \
         lattice of rank {lattice_rank}"
    )]
    InfiniteQuotient {
        lattice_rank: usize,
        relations_rank: usize,
    },

    #[error("class index {index} out of range: only {count} classes")]
    InvalidClassIndex { index: usize, count: usize },

    #[error("figure output supports rank 1 and 2 only, got rank {rank}")]
    SvgRankUnsupported { rank: usize },

    #[error("invalid report: {0}")]
    InvalidReport(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
