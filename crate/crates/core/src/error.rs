use num_complex::Complex64;

/// Errors raised by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{0} is outside the supported range")]
    OutOfRange(String),

    #[error("quadrature did not converge (estimate {error_estimate:e} after {evaluations} evaluations)")]
    NotConverged {
        value: Complex64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("extrapolation did not converge: ladder disagreement {0:e}")]
    Extrapolation(f64),

    #[error("numeric overflow: {0}")]
    Overflow(String),

    #[error("too few dyadic blocks: found {found}, need {needed}")]
    TooFewBlocks { found: usize, needed: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        let msg = e.to_string();
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            _ => Error::Parse(msg),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::OutOfRange(_) | Error::Parse(_) => 2,
            Error::Io(_) => 3,
            Error::TooFewBlocks { .. } => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
