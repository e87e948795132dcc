use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] svdyn::Error),
    #[error("{failed} of {total} oracle comparisons disagree")]
    OracleDisagreement { failed: usize, total: usize },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::OracleDisagreement { .. } => 1,
            CliError::Io { .. } | CliError::Schema(_) | CliError::Usage(_) => 2,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "Io",
            CliError::Schema(_) => "Schema",
            CliError::Usage(_) => "Usage",
            CliError::Domain(e) => e.code(),
            CliError::OracleDisagreement { .. } => "OracleDisagreement",
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.into())
            }
        }
    )*};
}

domain_from!(
    svdyn::spectral::SpectralError,
    svdyn::entropy::EntropyError,
    svdyn::shadowing::ShadowError,
    svdyn::oracle::OracleError,
    svdyn::recurrence::RecurrenceError
);
