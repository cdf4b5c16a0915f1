use moment_coords::Error as CoreError;
use thiserror::Error;

/// Failures mapped onto process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Property(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("domain error: {0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Property(_) => 1,
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidGeometry(_) | CoreError::MalformedSystem(_) => {
                CliError::Input(e.to_string())
            }
            CoreError::OutsideDomain | CoreError::OnBoundary | CoreError::NotConvex => {
                CliError::Domain(e.to_string())
            }
            // Solver or frame failures on valid input contradict the theory.
            _ => CliError::Property(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
