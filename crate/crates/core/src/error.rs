use thiserror::Error;

/// Errors raised by model construction, metric evaluation and the theorem harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("probability {value} lies outside [0, 1] beyond tolerance")]
    ProbabilityOutOfRange { value: f64 },

    #[error("invalid ontic space: {0}")]
    InvalidSpace(String),

    #[error("invalid epistemic state: {0}")]
    InvalidEpistemicState(String),

    #[error("invalid response function: {0}")]
    InvalidResponse(String),

    #[error("objects live on different ontic spaces")]
    SpaceMismatch,

    #[error("unknown outcome label `{0}`")]
    UnknownOutcome(String),

    #[error("no response function registered for measurement `{0}`")]
    MissingResponse(String),

    #[error("no preparation registered for {0}")]
    MissingPreparation(String),

    #[error("index {index} out of range for ontic space of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("epistemic state has no support (all densities are zero)")]
    EmptySupport,

    #[error("mixture weights sum to {0}, expected 1")]
    InvalidMixture(f64),

    #[error("degree of epistemicity undefined for orthogonal states (|<psi|phi>|^2 = {0:e})")]
    UndefinedEpistemicity(f64),

    #[error("no valid (non-orthogonal) state pairs to evaluate")]
    NoPairs,

    #[error("preparation procedures target different density operators: {0}")]
    MismatchedTargets(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("two states snap to the same ontic point {0}")]
    SnapCollision(usize),

    #[error("ontic space size {size} exceeds the configured cap {cap}")]
    CapExceeded { size: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
