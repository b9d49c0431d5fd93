use thetacalc_core::{Error, ErrorKind};

/// Exit statuses. Documented in the README and in `--help`.
pub const EXIT_OK: i32 = 0;
pub const EXIT_ARITHMETIC: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    /// Malformed vectors, config files, point files and the like.
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Domain => EXIT_DOMAIN,
                ErrorKind::Resource => EXIT_BUDGET,
                ErrorKind::Arithmetic => EXIT_ARITHMETIC,
            },
            CliError::Input(_) => EXIT_DOMAIN,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
