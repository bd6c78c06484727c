use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    InvalidRequest(String),
    #[error(transparent)]
    Library(#[from] noon::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::InvalidRequest(_) => "InvalidRequest",
            CliError::Library(e) => e.name(),
            CliError::Io(_) => "IOFailure",
        }
    }

    /// 2 for bad requests, 3 for numeric failures in the library, 1 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::InvalidRequest(_) => 2,
            CliError::Library(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> CliError {
    CliError::InvalidRequest(msg.into())
}
