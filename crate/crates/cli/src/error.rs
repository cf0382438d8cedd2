use std::fmt;

use fracineq::specfun::SpecfunError;
use fracineq::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// An inequality, identity or certification check failed.
    pub const CHECK_FAILED: i32 = 1;
    pub const DOMAIN: i32 = 2;
    /// Quadrature or series did not converge.
    pub const NUMERICAL: i32 = 3;
    /// A certificate failed and `--force` was not given.
    pub const GATE: i32 = 4;
    pub const USAGE: i32 = 64;
    pub const IO: i32 = 74;
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Numerical(String),
    Gate(String),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Domain(_) => exit::DOMAIN,
            CliError::Numerical(_) => exit::NUMERICAL,
            CliError::Gate(_) => exit::GATE,
            CliError::Io(_) => exit::IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, msg) = match self {
            CliError::Usage(m) => ("usage error", m),
            CliError::Domain(m) => ("domain error", m),
            CliError::Numerical(m) => ("numerical failure", m),
            CliError::Gate(m) => ("certificate failed", m),
            CliError::Io(m) => ("i/o error", m),
        };
        write!(f, "{kind}: {msg}")
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = e.to_string();
        if e.is_numerical_failure() {
            return CliError::Numerical(msg);
        }
        match e {
            CoreError::UnknownFunction(_) | CoreError::UnknownTheorem(_) => CliError::Usage(msg),
            _ => CliError::Domain(msg),
        }
    }
}

impl From<SpecfunError> for CliError {
    fn from(e: SpecfunError) -> Self {
        CoreError::from(e).into()
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
