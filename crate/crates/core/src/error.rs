use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GpiError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unsupported field size {0}: only primes <= 251 and 4")]
    UnsupportedField(u32),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl GpiError {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            GpiError::Budget(_) | GpiError::Undecided(_) => 2,
            GpiError::Verification(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, GpiError>;
