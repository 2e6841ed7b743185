use serde_json::{json, Value};
use tapkit_core::Error;

pub const ERROR_SCHEMA: &str = "tapkit.error/1";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Core(e) if e.is_input_error() => 2,
            CliError::Core(_) => 3,
        }
    }

    pub fn record(&self) -> Value {
        let (error, detail) = match self {
            CliError::Mismatch(_) => ("mismatch", None),
            CliError::Invalid(_) => ("invalid-input", None),
            CliError::Core(e) if e.is_input_error() => ("invalid-input", Some(e.kind())),
            CliError::Core(e) => ("computation", Some(e.kind())),
        };
        json!({
            "$schema": ERROR_SCHEMA,
            "error": error,
            "detail": detail,
            "exit_code": self.code(),
            "message": self.to_string(),
        })
    }
}
