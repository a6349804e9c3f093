use thiserror::Error;

/// Errors raised by the parameter-side computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("orthogonal-type block {block} has odd multiplicity {multiplicity}")]
    OddOrthogonalMultiplicity { block: String, multiplicity: u32 },
    #[error("non-self-dual block {block} has no dual partner of equal multiplicity")]
    UnpairedNonSelfDual { block: String },
    #[error("total dimension {dim} is odd")]
    OddTotalDimension { dim: u32 },
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("S(a) requires a >= 1 (got {0})")]
    BadA(u32),
    #[error("phase {rot} is not a root of unity of order dividing {bound}")]
    UnsupportedPhase { rot: String, bound: u32 },
    #[error("inconsistent supercuspidal label: {0}")]
    InconsistentLabel(String),
    #[error("not evaluable: {0}")]
    NotEvaluable(String),
    #[error("L-factor has a pole at s = 1/2")]
    PoleAtHalf,
    #[error("gamma factor at s = 1/2 is not a finite scalar: {0}")]
    GammaNotScalar(String),
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("element does not normalize the Levi subgroup")]
    NotNormalizing,
    #[error("Levi shape does not match rank {0}")]
    BadLeviShape(usize),
    #[error("parameter is not bounded")]
    NotBounded,
    #[error("parameter is not discrete")]
    NotDiscrete,
    #[error("invalid involution signature: {0}")]
    InvalidSignature(String),
    #[error("character has length {got}, expected {expected}")]
    CharacterLength { expected: usize, got: usize },
    #[error("incomplete table: missing entry {0}")]
    IncompleteTable(String),
    #[error("block {0} is not a Jordan block of the parameter")]
    BlockNotPresent(String),
    #[error("block {0} occurs with multiplicity > 1")]
    BlockNotMultiplicityFree(String),
    #[error("block {0} is not a valid descent choice for this character")]
    ChoiceInvalid(String),
    #[error("enhanced parameter lies outside the Iwahori blocks")]
    OutsideBlock,
    #[error("rank {rank} exceeds the enumeration bound {bound}")]
    RankBound { rank: u32, bound: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
