use thiserror::Error;

pub const EXIT_OK: i32 = 0;
/// `verify` ran but some residual exceeded the tolerance
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error, PartialEq)]
pub enum CliError {
    /// bad arguments or a violated precondition
    #[error("{0}")]
    Usage(String),
    /// quasi-definiteness lost or a singular Laguerre-Freud step
    #[error("numerical failure at n = {n}: {msg}")]
    Numerical { n: usize, msg: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical { .. } => EXIT_NUMERICAL,
        }
    }
}

impl From<dsop::Error> for CliError {
    fn from(e: dsop::Error) -> CliError {
        match e {
            dsop::Error::QuasiDefiniteFailure { n } | dsop::Error::SingularRun { n } => CliError::Numerical { n, msg: e.to_string() },
            other => CliError::Usage(other.to_string()),
        }
    }
}
