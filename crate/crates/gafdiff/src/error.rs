use std::io;
use std::path::Path;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gafdiff_core::Error),
    #[error("{0}")]
    Validation(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: String, message: String },
}

impl CliError {
    /// Process exit status: 2 for invalid input, 3 for I/O and file-format failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Core(_) | Self::Validation(_) => 2,
            Self::Io { .. } | Self::Format { .. } => 3,
        }
    }

    pub fn io(path: &Path, source: io::Error) -> Self {
        Self::Io {
            context: path.display().to_string(),
            source,
        }
    }

    pub fn format(path: &Path, message: impl Into<String>) -> Self {
        Self::Format {
            path: path.display().to_string(),
            message: message.into(),
        }
    }
}
