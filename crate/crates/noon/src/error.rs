use thiserror::Error;

/// Failures raised by the library. `name()` gives the stable variant name used in diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("photon cap {cap} exceeded")]
    CapExceeded { cap: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("all polynomial coefficients are zero")]
    ZeroPolynomial,
    #[error("{count} root(s) at infinity; rotate the mode basis before building detectors")]
    InfiniteRoot { count: usize },
    #[error("expected {expected} photons in the signal modes, found {found}")]
    PhotonNumberMismatch { expected: usize, found: usize },
    #[error("time {time:e} outside the resolvable window {window:e}")]
    WindowExceeded { time: f64, window: f64 },
    #[error("spectral grid inadequate: {0}")]
    GridInadequate(String),
    #[error("degenerate joint spectrum: {0}")]
    DegenerateJsa(String),
    #[error("case not supported: {0}")]
    UnsupportedCase(String),
    #[error("curve is flat (max + min = 0)")]
    FlatCurve,
    #[error("non-unitary transform: deviation {0:e}")]
    NotUnitary(f64),
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::CapExceeded { .. } => "CapExceeded",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::OutOfRange(_) => "OutOfRange",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::InfiniteRoot { .. } => "InfiniteRoot",
            Error::PhotonNumberMismatch { .. } => "PhotonNumberMismatch",
            Error::WindowExceeded { .. } => "WindowExceeded",
            Error::GridInadequate(_) => "GridInadequate",
            Error::DegenerateJsa(_) => "DegenerateJSA",
            Error::UnsupportedCase(_) => "UnsupportedCase",
            Error::FlatCurve => "FlatCurve",
            Error::NotUnitary(_) => "NotUnitary",
            Error::NoConvergence => "NoConvergence",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
