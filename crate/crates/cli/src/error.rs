use thiserror::Error;

/// Process exit statuses.
pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_DEPENDENT: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    Core(#[from] sphgenus::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(sphgenus::Error::Invariant(_)) => EXIT_INVARIANT,
            _ => EXIT_PARSE,
        }
    }
}
