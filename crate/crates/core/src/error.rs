use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant is a precondition violation or a detected internal
/// inconsistency; none are transient.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplicity vector is too large: sum of m_i(m_i+1) exceeds 2^62")]
    VectorTooLarge,

    #[error("multiplicity vector is empty")]
    EmptyVector,

    #[error("cannot decrement the first multiplicity: it is already zero")]
    ZeroFirstEntry,

    #[error("divisor classes live on different blow-ups ({left} vs {right} points)")]
    PointCountMismatch { left: usize, right: usize },

    #[error("invalid point indices {indices:?} for a class on {points} points")]
    BadIndices { indices: [usize; 3], points: usize },

    #[error("h^1 is only computed for classes of nonnegative degree, got d = {0}")]
    NegativeDegree(i64),

    #[error("conjectural h^0 - h^1 bookkeeping went negative for {0}")]
    InconsistentReduction(String),

    #[error("input is not quasiuniform with at least 10 points")]
    NotQuasiuniform,

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("field of size {prime} too small: {reason}")]
    FieldTooSmall { prime: u64, reason: String },

    #[error("{points} points but {mults} multiplicities")]
    SizeMismatch { points: usize, mults: usize },

    #[error("block configurations need an even r >= 2, got {0}")]
    OddBlockCount(usize),

    #[error("generator count in degree {degree} came out negative ({value}); rank computation is inconsistent")]
    NegativeGeneratorCount { degree: u32, value: i64 },

    #[error("syzygy deficit in degree {degree} came out negative ({value})")]
    NegativeSyzygyCount { degree: u32, value: i64 },

    #[error("Betti window stop rule did not trigger by degree {cap} (alpha = {alpha})")]
    StopRuleFailed { alpha: u32, cap: u32 },

    #[error("{0} is a perfect square")]
    SquareDiscriminant(u64),

    #[error("Pell discriminant must be at least 2, got {0}")]
    SmallDiscriminant(u64),

    #[error("invalid odd seed pair (f, g) = ({f}, {g}): {reason}")]
    BadSeedPair { f: u64, g: u64, reason: &'static str },

    #[error("degenerate Pell solution: v = 1 gives multiplicity 0")]
    DegenerateSolution,

    #[error("not an odd-family solution: {0}")]
    NotOddFamily(&'static str),

    #[error("uniform criterion needs n > 9, got n = {0}")]
    TooFewPoints(usize),

    #[error("expected an odd r >= 3, got {0}")]
    EvenOrSmallRank(u64),

    #[error("r must be at least 2, got {0}")]
    RankTooSmall(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed matrix dump: {0}")]
    MalformedDump(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
