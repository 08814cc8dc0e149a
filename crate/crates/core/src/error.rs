use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("unknown type `{0}`")]
    UnknownType(String),

    #[error("type `{0}` never appears in the injection sequence")]
    MissingType(String),

    #[error("type `{id}` appears {used} times but only {capacity} moulds exist")]
    CapacityExceeded {
        id: String,
        used: usize,
        capacity: u32,
    },

    #[error("assignment does not meet the demand of type `{0}`")]
    IncompleteAssignment(String),

    #[error("assignment is not in normal form (first violation at step {0})")]
    NotNormalForm(usize),

    #[error("decoder exceeded {0} steps without meeting demand")]
    DecodeOverrun(usize),

    #[error("invalid search parameters: {0}")]
    InvalidParams(String),

    #[error("{count} distinct permutations exceed the cap of {cap}")]
    TooLarge { count: u128, cap: u128 },

    #[error("reduction needs at least 2 slots, got {0}")]
    InvalidSlots(u32),

    #[error("timestamp log has no events")]
    EmptyLog,

    #[error("malformed timestamp log: {0}")]
    MalformedLog(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),

    #[error("corpus error: {0}")]
    Corpus(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn json(path: impl Into<PathBuf>, source: serde_json::Error) -> Self {
        Error::Json {
            path: path.into(),
            source,
        }
    }

    /// True for failures of the filesystem rather than of the data itself.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}
