use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Construction,
    Numeric,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("generated group exceeds the order limit of {limit}")]
    ClosureExceedsLimit { limit: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("index {index} out of range (must be < {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field extension degree {0} is not supported (1..=6)")]
    DegreeTooLarge(u32),
    #[error("division by zero in finite field")]
    DivisionByZero,
    #[error("{what} must be at least {min}, got {got}")]
    ArgumentTooSmall {
        what: &'static str,
        min: u64,
        got: u64,
    },
    #[error("group order {order} exceeds the cap {cap}")]
    OrderExceedsCap { order: u128, cap: usize },
    #[error("{0} is not a valid field order here (need a prime power >= 3)")]
    InvalidFieldOrder(u64),
    #[error("{0} is even; an odd prime power is required")]
    EvenCharacteristic(u64),
    #[error("action is not fixed-point-free: {0}")]
    NotFixedPointFree(String),
    #[error("complement order {h} does not divide kernel order minus one ({k} - 1)")]
    DivisibilityViolation { h: u64, k: u64 },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("structure check failed: {0}")]
    StructureViolation(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("could not split eigenspaces after {attempts} random draws")]
    DegenerateSplitFailure { attempts: usize },
    #[error("character table failed validation: {0}")]
    OrthogonalityFailure(String),
    #[error("{linear} linear characters, but |G|/|G'| = {expected}")]
    InconsistentWithDerivedSubgroup { linear: usize, expected: usize },
    #[error("invalid class data: {0}")]
    InvalidClassData(String),
    #[error("direct-norm oracle is limited to order {limit}, group has order {order}")]
    OracleTooLarge { order: usize, limit: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("{0}")]
    Usage(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            UnknownFamily(_) | Usage(_) | Io(_) | Parse { .. } => ErrorKind::Usage,
            DegenerateSplitFailure { .. }
            | OrthogonalityFailure(_)
            | InconsistentWithDerivedSubgroup { .. }
            | CheckFailed(_) => ErrorKind::Numeric,
            _ => ErrorKind::Construction,
        }
    }
}
