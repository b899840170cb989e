use std::fmt;

use thiserror::Error;

/// Position-carrying parse failure for terms, theories and presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("structural mismatch: {0}")]
    Structural(String),

    #[error("{what} needs {count} candidates, over the budget of {budget}")]
    Budget {
        what: String,
        count: String,
        budget: u64,
    },

    #[error("{monad} has no finite carrier over a {size}-element set")]
    NotEnumerable { monad: String, size: usize },

    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("not a 2-discerning candidate: {0}")]
    NotDiscerningCandidate(String),

    #[error("not a one-drop equation: {0}")]
    NotOneDrop(String),

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("unknown monad selector `{0}`")]
    UnknownMonad(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}
