use std::path::PathBuf;

use crate::query::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid term {text:?}: {reason}")]
    InvalidTerm { text: String, reason: &'static str },

    #[error("invalid weight {0}: weights must be finite and > 0")]
    InvalidWeight(f64),

    #[error("{operator} needs at least 2 operands, got {count}")]
    Arity { operator: &'static str, count: usize },

    #[error("{path}:{line}: {message}")]
    Format {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("empty vocabulary in {0}")]
    EmptyVocabulary(PathBuf),

    #[error("vector dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("cosine undefined for a zero vector")]
    ZeroVector,

    #[error("no in-vocabulary, non-negative term to embed")]
    NoUsableTerm,

    #[error("keyword {0:?} has no usable tokens")]
    EmptyKeyword(String),

    #[error("unknown dataset {0:?}")]
    UnknownDataset(String),

    #[error("unknown key {key:?} in dataset {dataset:?}")]
    UnknownKey { dataset: String, key: String },

    #[error("unknown country {name:?}{}", near_matches_suffix(.near))]
    UnknownCountry { name: String, near: Vec<String> },

    #[error("invalid year range {start}..{end}: start must not exceed end")]
    InvalidRange { start: i32, end: i32 },

    #[error("invalid selection: {0}")]
    InvalidSelection(String),

    #[error("no values for {key:?} in {dataset:?} between {start} and {end}")]
    EmptySlice {
        dataset: String,
        key: String,
        start: i32,
        end: i32,
    },

    #[error("pearson correlation needs equal lengths >= 2 (got {0} and {1})")]
    LengthMismatch(usize, usize),

    #[error("zero variance series")]
    ZeroVariance,

    #[error("empty series")]
    EmptySeries,

    #[error("empty original result list")]
    EmptyResultList,

    #[error("no derived result lists")]
    NoDerivedLists,

    #[error("invalid config: {0}")]
    Config(String),

    #[error("backend request failed: {0}")]
    Connection(String),

    #[error("backend returned {status}: {message}")]
    Backend { status: u16, message: String },
}

fn near_matches_suffix(near: &[String]) -> String {
    if near.is_empty() {
        String::new()
    } else {
        format!(" (did you mean: {})", near.join(", "))
    }
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
