use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const CATALOG_MISMATCH: i32 = 1;
    pub const IO_OR_PARSE: i32 = 2;
    pub const PREDICATE_NEGATIVE: i32 = 3;
    pub const POSTCONDITION: i32 = 4;
    pub const THEOREM_VIOLATION: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {message}", path.display())]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] eplab_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use eplab_core::Error as E;
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Invalid(_) => exit::IO_OR_PARSE,
            CliError::Core(e) => match e {
                E::CatalogMismatch { .. } => exit::CATALOG_MISMATCH,
                E::Postcondition(_) | E::CharacterizationDisagreement(_) | E::SvdNoConvergence { .. } => {
                    exit::POSTCONDITION
                }
                _ => exit::IO_OR_PARSE,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
