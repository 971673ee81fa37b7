use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation needs at least one input sequence")]
    EmptyInput,

    #[error("operation is undefined on the empty family")]
    EmptyFamily,

    #[error("members {0} and {1} are comparable, not an antichain")]
    NotAnAntichain(String, String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("elementary symmetric degree {k} out of range 0..={n}")]
    DegreeOutOfRange { k: usize, n: usize },

    #[error("universe of {size} vectors exceeds the cap of {cap}")]
    UniverseTooLarge { size: String, cap: u64 },

    #[error("antichain depth exceeded the cap of {cap}")]
    DepthExceeded { cap: usize },

    #[error("malformed family file: {0}")]
    MalformedFamily(String),
}

impl Error {
    /// True for the desk-scale guards of the exact search.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::UniverseTooLarge { .. } | Error::DepthExceeded { .. }
        )
    }
}

/// Reasons the profile of a family is not well defined.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("profile is undefined on the empty family")]
    EmptyFamily,

    #[error("n - r must be positive (n = {n}, r = {r})")]
    DivisorNotPositive { n: usize, r: usize },

    #[error("n - r = {divisor} does not divide |m| - s = {excess}")]
    NotDivisible { excess: i64, divisor: u64 },

    #[error("d = {d} is negative")]
    NegativeD { d: i64 },

    #[error("a[{index}] = m[{index}] - d = {value} is negative")]
    NegativeEntry { index: usize, value: i64 },
}
