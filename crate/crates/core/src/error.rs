use thiserror::Error;

use crate::algebra::{Dims, Factor, VariableIndex};

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable {var} is out of range for tensor dims {dims}")]
    IndexOutOfRange { var: VariableIndex, dims: Dims },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("partition sizes differ: {0} vs {1}")]
    SizeMismatch(u32, u32),

    #[error("index map for factor {factor} is not defined on index {index}")]
    MapNotTotal { factor: Factor, index: u8 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
