use std::fmt;

pub type CliResult<T> = Result<T, CliError>;

/// Command errors carrying their process exit code: 1 for input/parse
/// problems, 2 for invalid flag combinations, 3 for node-set mismatches.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Usage(String),
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Usage(msg) | CliError::Mismatch(msg) => {
                write!(f, "{msg}")
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Input(e.to_string())
    }
}
