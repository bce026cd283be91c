use thiserror::Error;

use crate::perm::MAX_STRANDS;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("strand count {0} is outside 1..={MAX_STRANDS}")]
    StrandCount(usize),

    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },

    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid band generator ({t} {s}) on {strands} strands")]
    InvalidBand { t: usize, s: usize, strands: usize },

    #[error("invalid descending cycle: {0}")]
    InvalidCycle(String),

    #[error("descending cycles {0} and {1} are not parallel")]
    NotParallel(String, String),

    #[error("descending cycles overlap at index {0}")]
    OverlappingCycles(usize),

    #[error("iteration cap of {0} applications exceeded")]
    IterationCap(usize),

    #[error("element budget of {0} exceeded")]
    BudgetExceeded(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("word is not a rearrangement of the letters of alpha_{0}")]
    NotAlphaRearrangement(usize),
}
