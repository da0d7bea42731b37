use thiserror::Error;

/// Errors produced by the algebra, linear-algebra and torus layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("span closure did not stabilize within {rounds} product rounds (rank {rank})")]
    ClosureBudget { rounds: usize, rank: usize },

    #[error("{0} is not prime or does not fit the modular kernel")]
    InvalidPrime(u64),

    #[error("entry denominator vanishes modulo {0}")]
    DenominatorVanishes(u64),

    #[error("invalid structure table: {0}")]
    InvalidTable(String),

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("mixed-radix digit {digit} out of range at position {position} (radix {radix})")]
    DigitOutOfRange {
        position: usize,
        digit: usize,
        radix: usize,
    },

    #[error("algebra {0} is not associative")]
    NotAssociative(String),

    #[error(
        "B(p={p}, q={q}) has real dimension {real_dim}, above the resource guard {max_real_dim}"
    )]
    ResourceGuard {
        p: usize,
        q: usize,
        real_dim: usize,
        max_real_dim: usize,
    },

    #[error("matrix is not a complex structure: {0}")]
    NotComplexStructure(String),

    #[error("{0} does not commute with the complex structure")]
    NotHolomorphic(String),

    #[error("{0} does not preserve the integer lattice")]
    NotIntegral(String),

    #[error("basis does not split into J-planes: {0}")]
    SplittingFailed(String),

    #[error("degenerate lattice: {0}")]
    DegenerateLattice(String),

    #[error("degenerate discriminant: {0}")]
    DegenerateDiscriminant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
