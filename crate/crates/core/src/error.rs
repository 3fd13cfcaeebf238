use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("element is not real: {0}")]
    NotReal(String),
    #[error("representation is not acyclic over the fraction field")]
    NotAcyclic,
    #[error("identity word check failed: {0}")]
    BadIdentity(String),
    #[error("linking form is degenerate: {0}")]
    DegenerateForm(String),
    #[error("could not identify root on the unit circle: {0}")]
    UnidentifiedRoot(String),
    #[error("conductor {0} exceeds the cap {1} (set BLANCHFIELD_MAX_CONDUCTOR)")]
    ConductorCap(u64, u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("group of order {0} is too large for exhaustive search (limit {1})")]
    TooLarge(u64, u64),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::InvalidInput(_) => "invalid_input",
            Error::NotReal(_) => "not_real",
            Error::NotAcyclic => "not_acyclic",
            Error::BadIdentity(_) => "bad_identity",
            Error::DegenerateForm(_) => "degenerate_form",
            Error::UnidentifiedRoot(_) => "unidentified_root",
            Error::ConductorCap(..) => "conductor_cap",
            Error::Unsupported(_) => "unsupported",
            Error::TooLarge(..) => "too_large",
            Error::NoSolution => "no_solution",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }

    /// Errors caused by malformed input rather than by the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::InvalidInput(_)
                | Error::Unsupported(_)
                | Error::Io(_)
                | Error::Json(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
