use thiserror::Error;

/// Errors raised by the odometer computations.
///
/// Variant names are part of the command-line contract: [`Error::name`]
/// returns them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scale must contain at least one entry")]
    EmptyScale,
    #[error("first scale entry must be at least 2, got {0}")]
    BadFirstEntry(u64),
    #[error("scale entries must increase strictly: s_{index} = {prev} is not below {next}")]
    NotIncreasing { index: usize, prev: u64, next: u64 },
    #[error("scale entry s_{index} = {prev} does not divide the next entry {next}")]
    DivisibilityViolation { index: usize, prev: u64, next: u64 },
    #[error("cannot parse supernatural number {input:?}: {reason}")]
    ParseSupernatural { input: String, reason: String },
    #[error("value {value} is outside the admissible range [0, {bound})")]
    OutOfRange { value: u64, bound: u64 },
    #[error("operands live at different levels ({left} and {right})")]
    LevelMismatch { left: usize, right: usize },
    #[error("function level {level} expects {expected} values, got {actual}")]
    LevelSizeMismatch {
        level: usize,
        expected: u64,
        actual: usize,
    },
    #[error("gamma is undefined at 0")]
    GammaOfZero,
    #[error("root of unity {k}/{s} does not belong to the dual of the truncated scale")]
    NotInGroup { k: u64, s: u64 },
    #[error("length values must satisfy 1 < l_1 < l_2 < ...: {0}")]
    InvalidLengthSpec(String),
    #[error("table domain is not a finite subgroup: {0}")]
    DomainNotSubgroup(String),
    #[error("length table violates the {0} axiom")]
    AxiomViolation(String),
    #[error("sublevel set at value {0} is not a subgroup")]
    SublevelNotSubgroup(String),
    #[error("scale depth {depth} is below the required level {level}")]
    ScaleTooShallow { level: usize, depth: usize },
    #[error("function takes a non-real value at x = {0}")]
    NotRealValued(u64),
    #[error("function has nonzero mean {0}; it is not a coboundary")]
    NonzeroMean(String),
    #[error("level size {size} exceeds the dense transform limit {limit}")]
    LevelOverflow { size: u64, limit: u64 },
    #[error("function takes a non-integer value at x = {0}")]
    NonIntegerValues(u64),
    #[error("function is not a projection: value at x = {0} is not 0 or 1")]
    NotAProjection(u64),
}

impl Error {
    /// The variant name, used as the machine-readable error code.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyScale => "EmptyScale",
            Error::BadFirstEntry(_) => "BadFirstEntry",
            Error::NotIncreasing { .. } => "NotIncreasing",
            Error::DivisibilityViolation { .. } => "DivisibilityViolation",
            Error::ParseSupernatural { .. } => "ParseSupernatural",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::LevelMismatch { .. } => "LevelMismatch",
            Error::LevelSizeMismatch { .. } => "LevelSizeMismatch",
            Error::GammaOfZero => "GammaOfZero",
            Error::NotInGroup { .. } => "NotInGroup",
            Error::InvalidLengthSpec(_) => "InvalidLengthSpec",
            Error::DomainNotSubgroup(_) => "DomainNotSubgroup",
            Error::AxiomViolation(_) => "AxiomViolation",
            Error::SublevelNotSubgroup(_) => "SublevelNotSubgroup",
            Error::ScaleTooShallow { .. } => "ScaleTooShallow",
            Error::NotRealValued(_) => "NotRealValued",
            Error::NonzeroMean(_) => "NonzeroMean",
            Error::LevelOverflow { .. } => "LevelOverflow",
            Error::NonIntegerValues(_) => "NonIntegerValues",
            Error::NotAProjection(_) => "NotAProjection",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
