use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument hits a pole of Γ or of a hypergeometric denominator.
    #[error("pole: {0}")]
    Pole(String),

    /// A precondition on the inputs is violated.
    #[error("domain: {0}")]
    Domain(String),

    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),

    /// 1D variants only admit `ell = 0`.
    #[error("convention: {0}")]
    Convention(String),

    #[error("non-normalizable state: {0}")]
    NonNormalizable(String),

    /// κ² ≤ 0, no propagating wave.
    #[error("evanescent channel: {0}")]
    Evanescent(String),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// The energy bracket does not contain a level with the requested node count.
    #[error("bracket miss: {0}")]
    BracketMiss(String),

    #[error("fit residual {residual:.3e} exceeds {limit:.1e}")]
    FitResidual { residual: f64, limit: f64 },

    #[error("io: {0}")]
    Io(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Numerical,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Pole(_)
            | Error::NonConvergence(_)
            | Error::BracketMiss(_)
            | Error::FitResidual { .. } => ErrorKind::Numerical,
            _ => ErrorKind::Domain,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
