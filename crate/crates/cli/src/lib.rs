//! Commands behind the `nilrep` binary, the benchmark harness, and the
//! JSON report schema.

pub mod bench;
pub mod commands;
pub mod report;

use std::fmt;
use std::path::PathBuf;

use nilrep::{Family, NilpotentPresentation};

/// Exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    VerificationFailed = 1,
    InputError = 2,
    Internal = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Input(_) => Status::InputError,
            CliError::Internal(_) => Status::Internal,
        }
    }
}

impl From<nilrep::Error> for CliError {
    fn from(err: nilrep::Error) -> Self {
        use nilrep::Error::*;
        match err {
            Syntax { .. } | IndexRange(_) | PowerRelation { .. } | Parameter(_) => CliError::Input(err.to_string()),
            NotClosed(_) => CliError::Internal(format!("{err} (the figure1 algorithm closes over the whole basis)")),
            _ => CliError::Internal(err.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Where a presentation comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Builtin(Family),
}

impl Source {
    pub fn load(&self) -> CliResult<NilpotentPresentation> {
        match self {
            Source::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                nilrep::presentation::parse_presentation(&text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
            }
            Source::Builtin(family) => Ok(family.presentation()?),
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::File(path) => write!(f, "{}", path.display()),
            Source::Builtin(family) => write!(f, "{family}"),
        }
    }
}
