use thiserror::Error;

use crate::loshu::PredicateViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("digit {value} is outside the allowed range {min}..=9")]
    DigitOutOfRange { value: u8, min: u8 },

    #[error("a face needs at least one digit")]
    EmptyFace,

    #[error("a die needs at least one face")]
    EmptyDie,

    #[error("face multiplicity must be positive")]
    ZeroMultiplicity,

    #[error("faces of {left} and {right} digits cannot be compared")]
    IncomparableFaces { left: usize, right: usize },

    #[error("value {0} appears in both teams, the outcome is ambiguous")]
    AmbiguousOutcome(i64),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("assignment digits must be pairwise distinct; {0} is repeated")]
    RepeatedDigit(u8),

    #[error(transparent)]
    Predicate(#[from] PredicateViolation),

    #[error("invalid assignment stack: {0}")]
    InvalidStack(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("trit {0} is not in 0..=2")]
    InvalidTrit(u8),

    #[error("word length must be between 1 and {max}, got {len}")]
    WordLength { len: usize, max: usize },

    #[error("words of length {left} and {right} cannot be compared")]
    WordLengthMismatch { left: usize, right: usize },

    #[error("die number {number} is out of range 1..={max}")]
    DieNumberOutOfRange { number: u64, max: u64 },

    #[error("rank {0} is not in 0..=2")]
    InvalidRank(usize),

    #[error("malformed family: {0}")]
    MalformedFamily(String),

    #[error("level {level} is out of range 1..={depth}")]
    LevelOutOfRange { level: usize, depth: usize },

    #[error("simulation needs at least one trial")]
    ZeroTrials,

    #[error("depth {0} is too large for exact decimal normalization")]
    DepthTooLarge(usize),

    #[error("unsupported table depth {0}; tables exist for depths 1, 2 and 3")]
    UnsupportedTableDepth(usize),

    #[error("json: {0}")]
    Json(String),

    #[error("csv: {0}")]
    Csv(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Csv(err.to_string())
    }
}
