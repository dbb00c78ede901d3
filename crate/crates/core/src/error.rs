use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McsError {
    #[error("rank {rank} outside 1..={sigma}")]
    InvalidRank { rank: u32, sigma: u32 },

    #[error("index {index} outside {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("range {lo}..={hi} is not inside 1..={len}")]
    InvalidRange { lo: usize, hi: usize, len: usize },

    #[error("cannot build a range-minimum structure over an empty sequence")]
    EmptySequence,

    #[error("string is not a common subsequence of the input pair")]
    NotCommon,

    #[error("string is not a prefix of any maximal common subsequence")]
    NotMcsPrefix,

    #[error("resource cap exceeded: {what} needs {needed}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        needed: usize,
        limit: usize,
    },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = McsError> = std::result::Result<T, E>;
