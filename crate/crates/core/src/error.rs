use thiserror::Error;

/// Broad classes of failure; the CLI maps these to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Precondition,
    Budget,
    Mismatch,
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field {p}^{n} does not fit in 64 bits")]
    FieldTooLarge { p: u64, n: u32 },
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("wrong characteristic: expected {expected}, got {got}")]
    WrongCharacteristic { expected: &'static str, got: u64 },
    #[error("singular: {0}")]
    Singular(String),
    #[error("excluded invariant: {0}")]
    ExcludedInvariant(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("bad prime {p}: {what}")]
    BadPrime { p: u64, what: String },
    #[error("budget exceeded: {what} needs {needed}, limit {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("polynomial does not split within degree {0} extensions")]
    NotSplit(u32),
    #[error("verification mismatch: predicted {predicted}, counted {counted}")]
    Mismatch { predicted: i64, counted: i64 },
    #[error("not found: {0}")]
    NotFound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Budget { .. } | Error::NotSplit(_) => ErrorKind::Budget,
            Error::Mismatch { .. } => ErrorKind::Mismatch,
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Precondition,
        }
    }

    /// Short stable tag for machine consumption.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not prime",
            Error::CharacteristicTwo => "characteristic two",
            Error::ZeroDegree => "zero degree",
            Error::FieldTooLarge { .. } => "field too large",
            Error::MixedFields => "mixed fields",
            Error::DivisionByZero => "division by zero",
            Error::WrongCharacteristic { .. } => "wrong characteristic",
            Error::Singular(_) => "singular",
            Error::ExcludedInvariant(_) => "excluded invariant",
            Error::Degenerate(_) => "degenerate input",
            Error::BadPrime { .. } => "bad prime",
            Error::Budget { .. } => "budget exceeded",
            Error::NotSplit(_) => "not split",
            Error::Mismatch { .. } => "verification mismatch",
            Error::NotFound(_) => "not found",
            Error::Parse(_) => "parse error",
            Error::Internal(_) => "internal error",
        }
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
