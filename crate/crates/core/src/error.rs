use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {actual}")]
    CueLength { expected: usize, actual: usize },

    #[error("value out of domain: {0}")]
    Domain(String),

    #[error("ternary vector has no nonzero components")]
    EmptyGate,

    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("dead output neurons {0:?}: unit is inoperable")]
    DeadOutput(Vec<usize>),

    #[error("index {index} out of range for size {size}")]
    Index { index: usize, size: usize },

    #[error("enumeration of {trials} inputs exceeds the limit of {limit}")]
    TooLarge { trials: u128, limit: u128 },

    #[error("curve grids differ: {0}")]
    Grid(String),

    #[error("time gate collected {found} events, expected {expected}")]
    GateCountMismatch { expected: usize, found: usize },

    #[error("channel {0} fired more than once in the gate window")]
    DuplicateChannel(usize),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("empty input")]
    EmptyInput,

    #[error("ordering violated: {0}")]
    Ordering(String),

    #[error("signal error: {0}")]
    Signal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag, used in the CLI's JSON error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::CueLength { .. } => "CueLengthError",
            Error::Domain(_) => "DomainError",
            Error::EmptyGate => "EmptyGateError",
            Error::Param(_) => "ParamError",
            Error::DeadOutput(_) => "DeadOutputError",
            Error::Index { .. } => "IndexError",
            Error::TooLarge { .. } => "TooLargeError",
            Error::Grid(_) => "GridError",
            Error::GateCountMismatch { .. } => "GateCountMismatch",
            Error::DuplicateChannel(_) => "DuplicateChannel",
            Error::Config(_) => "ConfigError",
            Error::EmptyInput => "EmptyInputError",
            Error::Ordering(_) => "OrderingError",
            Error::Signal(_) => "SignalError",
            Error::Parse(_) => "ParseError",
            Error::Io(_) => "IoError",
            Error::Csv(_) => "CsvError",
            Error::Json(_) => "JsonError",
        }
    }
}

pub(crate) fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::CueLength { expected, actual });
    }
    Ok(())
}
