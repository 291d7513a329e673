use ris_radar::Error as CoreError;

/// Failure classes; each maps to a fixed process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Config(_) => 2,
            CliError::Geometry(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::DegenerateGeometry(_) | CoreError::IndexOutOfRange { .. } => CliError::Geometry(e.to_string()),
            CoreError::Output(m) => CliError::Io(m),
            _ => CliError::Config(e.to_string()),
        }
    }
}
