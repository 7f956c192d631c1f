use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] annuli_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("check failed: {0}")]
    Check(String),
}

impl CliError {
    /// 1 for bad input, 2 for a failed ordering or verification check.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 2,
            _ => 1,
        }
    }

    /// Whether the reader of standard output went away, as with `| head`.
    pub fn is_broken_pipe(&self) -> bool {
        let pipe = |e: &std::io::Error| e.kind() == std::io::ErrorKind::BrokenPipe;
        match self {
            CliError::Io(e) => pipe(e),
            CliError::Csv(e) => matches!(e.kind(), csv::ErrorKind::Io(io) if pipe(io)),
            _ => false,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
