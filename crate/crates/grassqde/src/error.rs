use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial division is not exact")]
    DivisionNotExact,
    #[error("division by zero")]
    ZeroDenominator,
    #[error("series truncation orders differ ({0} vs {1})")]
    TruncationMismatch(usize, usize),
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("partition {0:?} does not fit in the {1}x{2} box")]
    OutOfBox(Vec<u32>, usize, usize),
    #[error("partition {0:?} does not have first part n-k")]
    NotFullWidth(Vec<u32>),
    #[error("localization matrix is singular")]
    SingularLocalization,
    #[error("degenerate equivariant weights: {0}")]
    DegenerateWeights(String),
    #[error("coincident fixed-point coordinates")]
    DegenerateFixedPoint,
    #[error("epsilon must be nonzero")]
    ZeroEpsilon,
    #[error("Newton continuation failed at step {step} (z = {z:e}, jacobian condition ~ {cond:e})")]
    NonConvergence { step: usize, z: f64, cond: f64 },
    #[error("tracked roots {0} and {1} coalesced")]
    PathCollision(usize, usize),
    #[error("spectra do not match: {0}")]
    UnmatchedSpectrum(String),
    #[error("n = {0} exceeds the dense operator limit of 8 sites")]
    SizeLimit(usize),
    #[error("no diagonal gauge reaches the tolerance (best residual {0:e})")]
    GaugeNotFound(f64),
    #[error("variable {0} has no assigned value")]
    Unassigned(String),
    #[error("malformed data: {0}")]
    Parse(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
