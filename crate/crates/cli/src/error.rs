use std::path::PathBuf;

/// Exit code 1: the config file (or sweep arguments derived from it) is
/// unusable. Exit code 2: a valid experiment failed while running.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("unknown sweep axis '{0}'")]
    UnknownAxis(String),

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: topocount_core::Error,
    },

    #[error("cannot {action} {}: {source}", path.display())]
    Io {
        action: &'static str,
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("barcode file {}: {source}", path.display())]
    BarcodeParse {
        path: PathBuf,
        #[source]
        source: topocount_core::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::UnknownAxis(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
