use std::path::PathBuf;

use qbench_credit::CreditError;
use qbench_qimage::ImageError;
use qbench_qnn::QnnError;
use qbench_qubo::QuboError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("file not found: {}", .0.display())]
    NotFound(PathBuf),
    #[error("{}: {source}", .path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    /// Process exit status; 2 is left to argument parsing.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NotFound(_) | CliError::Io { .. } => 3,
            CliError::Malformed(_) => 4,
            CliError::InvalidConfig(_) => 5,
            CliError::Other(_) => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        let path = path.into();
        if source.kind() == std::io::ErrorKind::NotFound {
            CliError::NotFound(path)
        } else {
            CliError::Io { path, source }
        }
    }
}

impl From<QuboError> for CliError {
    fn from(e: QuboError) -> Self {
        match e {
            QuboError::Parse { .. } => CliError::Malformed(e.to_string()),
            _ => CliError::InvalidConfig(e.to_string()),
        }
    }
}

impl From<ImageError> for CliError {
    fn from(e: ImageError) -> Self {
        match e {
            // file reads happen in the CLI, so an I/O error here comes from decompression
            ImageError::Idx(_) | ImageError::Dataset(_) | ImageError::Io(_) => CliError::Malformed(e.to_string()),
            _ => CliError::InvalidConfig(e.to_string()),
        }
    }
}

impl From<CreditError> for CliError {
    fn from(e: CreditError) -> Self {
        match e {
            CreditError::Parse { .. } | CreditError::UnknownOutcome { .. } | CreditError::Empty => {
                CliError::Malformed(e.to_string())
            }
            CreditError::Qubo(q) => q.into(),
            _ => CliError::InvalidConfig(e.to_string()),
        }
    }
}

impl From<QnnError> for CliError {
    fn from(e: QnnError) -> Self {
        match e {
            QnnError::Image(i) => i.into(),
            _ => CliError::InvalidConfig(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Other(format!("serialization failed: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
