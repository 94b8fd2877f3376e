//! File formats, the bundled corpus, verification suites and the command-line
//! front end for `ghal-core`.

use std::fmt;
use std::path::Path;

pub mod cli;
pub mod corpus;
pub mod format;
pub mod report;
pub mod suites;

/// Exit code 2 for bad input or violated preconditions, 1 for failed mathematical checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Math(_) => 1,
        }
    }

    pub fn context(self, path: &Path) -> CliError {
        match self {
            CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
            CliError::Math(m) => CliError::Math(format!("{}: {m}", path.display())),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Math(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ghal_core::Error> for CliError {
    fn from(e: ghal_core::Error) -> CliError {
        use ghal_core::Error as E;
        match e {
            E::GdimTooSmall { .. } | E::DoubleDualNotInjective | E::Internal(_) => CliError::Math(e.to_string()),
            _ => CliError::Input(format!("precondition violated: {e}")),
        }
    }
}
