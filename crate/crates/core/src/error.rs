use thiserror::Error;

use crate::ncalg::Alphabet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: Alphabet, right: Alphabet },
    #[error("word mixes ab-letters with cd-letters")]
    MixedAlphabet,
    #[error("truncation cutoff mismatch: {left} vs {right}")]
    CutoffMismatch { left: u32, right: u32 },
    #[error("input contains the letter t")]
    ContainsT,
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is not in the cd-span (residual at degree {degree})")]
    NotInCdSpan { degree: u32 },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not primitive")]
    NotPrimitive,
    #[error("matrix is not primitive within exponent bound {0}")]
    NotPrimitiveWithin(u32),
    #[error("empty interval [({from},0),({to},{length})]")]
    EmptyInterval { from: usize, to: usize, length: u32 },
    #[error("interval of length 0 has no ab-index")]
    TrivialInterval,
    #[error("rank {rank} out of range 0..={length}")]
    RankOutOfRange { rank: u32, length: u32 },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("Eulerian rank checks require an even positive rank, got {0}")]
    OddRank(u32),
    #[error("({0},{1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("invalid family parameter: {0}")]
    InvalidFamily(String),
    #[error("negative entry in a nonnegative matrix at ({0},{1})")]
    NegativeEntry(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
