use std::io;

use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("missing section: {0}")]
    MissingSection(&'static str),

    #[error("invalid instance: {0}")]
    Validation(String),

    #[error("unknown node id {0}")]
    UnknownNode(NodeId),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("exact solver refuses {0} customers (limit {limit})", limit = crate::heuristics::EXACT_LIMIT)]
    TooLarge(usize),

    #[error("invalid parameters: {0}")]
    Params(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 3,
            Error::Csv(e) if matches!(e.kind(), csv::ErrorKind::Io(_)) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
