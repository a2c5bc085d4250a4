use thiserror::Error;

/// Errors raised by the residue arithmetic and Barrett routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("moduli list is empty")]
    EmptyModuli,

    #[error("modulus {0} is smaller than 2")]
    ModulusTooSmall(u64),

    #[error("moduli {0} and {1} are not coprime")]
    DuplicateOrNonCoprime(u64, u64),

    #[error("value is outside the range [0, {bound})")]
    OutOfRange { bound: String },

    #[error("operands belong to different moduli sets")]
    SetMismatch,

    #[error("residue vector has {got} channels, moduli set has {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("residue {value} at channel {index} is not below modulus {modulus}")]
    ResidueOutOfRange {
        index: usize,
        value: u64,
        modulus: u64,
    },

    #[error("channel index {0} is out of bounds")]
    IndexOutOfBounds(usize),

    #[error("invalid index partition: {0}")]
    InvalidPartition(String),

    #[error("partition and residue vector use different moduli sets")]
    PartitionMismatch,

    #[error("base extension needs at least one known residue")]
    EmptyKnownSet,

    #[error("modulus N must be at least 2")]
    InvalidModulus,

    #[error("condition violated: {0}")]
    ConditionViolation(String),

    #[error("input {value} is not below {bound}")]
    InputOutOfRange { value: String, bound: String },

    #[error("residue vector belongs to a different context")]
    ContextMismatch,

    #[error("range case {0} does not keep inputs and outputs in the same range")]
    CaseMismatch(u8),

    #[error("{0} and {1} are not coprime")]
    NotCoprime(String, String),

    #[error("parameter selection failed: {0}")]
    SelectionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
