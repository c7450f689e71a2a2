use thiserror::Error;

/// Errors raised by the library. Every failure is a contract violation on
/// the caller's side or a genuine mathematical obstruction; nothing is
/// silently truncated or regularized.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("moment cap exceeded: functional stores moments up to degree {cap}, degree {required} requested")]
    CapExceeded { cap: u32, required: u32 },

    #[error("order of functional exceeds search cap {cap}")]
    OrderExceedsCap { cap: u32 },

    #[error("rank deficient: found {rank} of {expected} pivots up to degree {cap}")]
    RankDeficient { rank: usize, expected: usize, cap: u32 },

    #[error("singular Gramian")]
    SingularGramian,

    #[error("duplicate point {0}")]
    DuplicatePoint(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
