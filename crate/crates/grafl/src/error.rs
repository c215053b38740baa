//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by graph loading, configuration, learning and transfer.
#[derive(Error, Debug)]
pub enum GraflError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("element out of bounds: {kind} index {index} (valid range 0..{len})")]
    OutOfBounds {
        kind: &'static str,
        index: usize,
        len: usize,
    },

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("transfer error: graph does not support base feature family '{family}'")]
    Transfer { family: String },

    #[error("function file schema error in field '{field}': {msg}")]
    Schema { field: String, msg: String },

    #[error("task error: {0}")]
    Task(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, GraflError>;
