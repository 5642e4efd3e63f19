use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid PD code: {0}")]
    InvalidPd(String),

    #[error("crossing index {index} out of range for a diagram with {len} crossings")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("diagram is not connected")]
    Disconnected,

    #[error("z-exponent {0} is negative; the Alexander specialization needs a knot polynomial")]
    NegativeZDegree(i32),

    #[error("diagram has {crossings} crossings, above the limit of {limit}")]
    TooLarge { crossings: usize, limit: usize },

    #[error("crossing {0} joins a Seifert circle to itself")]
    NotEligible(usize),

    #[error("expected a knot diagram, found {0} components")]
    NotAKnot(usize),

    #[error("computation budget exceeded")]
    BudgetExceeded,

    #[error("knot table {0} has no valid entries")]
    EmptyTable(String),

    #[error("duplicate knot name {name:?} on lines {first} and {second}")]
    DuplicateName { name: String, first: u64, second: u64 },

    #[error("unknown knot name {0:?}")]
    UnknownName(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
