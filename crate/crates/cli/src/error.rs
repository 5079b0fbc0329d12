//! CLI error category and exit-code mapping.
//!
//! Exit codes: 0 success, 1 runtime error, 2 usage/config error. Every
//! failure prints one line to stderr: `error: <category>: <message>`.

use std::fmt;

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug)]
pub enum CliError {
    /// Bad configuration or parameters (exit 2).
    Config(String),
    /// Schema or file-layout mismatch (exit 2).
    Schema(String),
    /// Runtime data failure (exit 1).
    Data(String),
    /// I/O or serialization failure (exit 1).
    Io(String),
}

impl CliError {
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Schema(_) => "schema",
            CliError::Data(_) => "data",
            CliError::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Schema(_) => 2,
            CliError::Data(_) | CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Schema(m) | CliError::Data(m) | CliError::Io(m) => m,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Single-line output: collapse embedded newlines.
        let flat = self.message().replace('\n', " ");
        write!(f, "{}", flat.trim())
    }
}

impl std::error::Error for CliError {}

impl From<audit_sampler::Error> for CliError {
    fn from(e: audit_sampler::Error) -> Self {
        use audit_sampler::Error as E;
        match e {
            E::Schema(_) => CliError::Schema(e.to_string()),
            E::InvalidParameter(_) => CliError::Config(e.to_string()),
            E::Io(_) | E::Csv(_) | E::Json(_) => CliError::Io(e.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
