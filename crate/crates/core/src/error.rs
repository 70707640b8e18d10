use thiserror::Error;

/// Why a Delsarte certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateViolation {
    /// alpha_0 must be strictly positive.
    NonPositiveConstant,
    /// alpha_t < 0 for some t >= 1.
    NegativeCoefficient { index: usize },
    /// P(d) > 0 at a distance the code is allowed to use.
    PositiveOnAllowed { distance: usize, value: String },
    /// Coefficient vector length does not match the word length.
    WrongLength { expected: usize, found: usize },
    /// Allowed distance outside 1..=k.
    DistanceOutOfRange { distance: usize },
}

impl std::fmt::Display for CertificateViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::NonPositiveConstant => write!(f, "alpha_0 must be > 0"),
            Self::NegativeCoefficient { index } => write!(f, "alpha_{index} is negative"),
            Self::PositiveOnAllowed { distance, value } => {
                write!(f, "P({distance}) = {value} > 0 on an allowed distance")
            }
            Self::WrongLength { expected, found } => {
                write!(f, "expected {expected} coefficients, found {found}")
            }
            Self::DistanceOutOfRange { distance } => {
                write!(f, "allowed distance {distance} is outside 1..=k")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("graph would have {vertices} vertices, above the materialization cap {cap}; use the implicit oracle")]
    SizeCap { vertices: u128, cap: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(CertificateViolation),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),

    #[error("linear program is unbounded")]
    Unbounded,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
