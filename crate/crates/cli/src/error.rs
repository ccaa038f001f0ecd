use std::fmt;

/// Failures that end a command before a report is written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed or inconsistent input (exit 2).
    Input(String),
    /// Input outside what can be decided (exit 3).
    Unsupported(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }

    /// Prefixes the message with the document location it came from.
    pub fn at(self, field: &str) -> Self {
        match self {
            CliError::Input(m) => CliError::Input(format!("{field}: {m}")),
            CliError::Unsupported(m) => CliError::Unsupported(format!("{field}: {m}")),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Unsupported(m) => write!(f, "unsupported: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<fixtrace::Error> for CliError {
    fn from(e: fixtrace::Error) -> Self {
        match e {
            fixtrace::Error::Unsupported(_) | fixtrace::Error::Indeterminate(_) => CliError::Unsupported(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
