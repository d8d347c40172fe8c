use thiserror::Error;

use crate::weights::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root system: {0}")]
    Unsupported(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("rank {0} exceeds the supported maximum {max}", max = crate::weights::MAX_RANK)]
    RankTooLarge(usize),
    #[error("coordinate {0} does not fit in a weight")]
    CoordinateRange(i64),
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("weight {weight} is not {p}-restricted")]
    NotRestricted { weight: Weight, p: u32 },
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("character is not W-invariant: maximal weight {0} is not dominant")]
    NotInvariant(Weight),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("composition factors of L{weight} undetermined: Jantzen coefficients exceed 1 at {}", fmt_weights(.offending))]
    Undetermined { weight: Weight, offending: Vec<Weight> },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

fn fmt_weights(ws: &[Weight]) -> String {
    ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
