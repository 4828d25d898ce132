use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty word has no rotation")]
    EmptyWord,
    #[error("NUL byte in input")]
    NulByte,
    #[error("invalid factor span {start}..={end} for text of length {len}")]
    InvalidSpan {
        start: usize,
        end: usize,
        len: usize,
    },
    #[error("invalid suffix array")]
    InvalidSuffixArray,
    #[error("rank position out of bounds")]
    RankOutOfBounds,
    #[error("A/SA length mismatch")]
    GapLengthMismatch,
    #[error("inconsistent gap counts")]
    InconsistentGaps,
    #[error("block does not start where the transform ends")]
    NotAdjacent,
    #[error("suffix array required but not present")]
    MissingSuffixArray,
    #[error("non-contiguous factor stream")]
    NonContiguousStream,
    #[error("factor stream is not a Lyndon factorization")]
    NotLyndonFactor,
    #[error("group cut inside a Lyndon factor")]
    CutInsideFactor,
    #[error("not a sentinel-terminated bwt")]
    NotSentinelTerminated,
    #[error("malformed bwt")]
    MalformedBwt,
    #[error("invalid pipeline config: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
