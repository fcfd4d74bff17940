use thiserror::Error;

/// Errors raised by the evaluation, modelling and verification layers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid precision config: {0}")]
    InvalidPrecision(String),

    #[error("invalid modular parameter: {0}")]
    InvalidModular(String),

    #[error("exponential overflow evaluating e(x) at x = {0}")]
    Overflow(String),

    /// A theta argument sits within `eps_pole` of the lattice `Z + tau Z`.
    #[error(
        "pole proximity at {location}: distance {distance:.3e} to the lattice is below {eps:.1e}"
    )]
    PoleProximity {
        location: String,
        distance: f64,
        eps: f64,
    },

    /// A denominator of a rational closed form vanishes (or nearly so).
    #[error("vanishing denominator in {0}")]
    DivisionByZero(String),

    #[error("invalid series operation: {0}")]
    Series(String),

    #[error("invalid model at {path}: {message}")]
    Model { path: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    /// No pole-free sample point could be drawn within the retry budget.
    #[error("identity `{identity}`: no valid sample after {retries} retries (last violation: {constraint})")]
    Domain {
        identity: String,
        retries: usize,
        constraint: String,
    },
}

impl Error {
    pub(crate) fn model(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Model {
            path: path.into(),
            message: message.into(),
        }
    }

    /// True for errors that a sampler may cure by drawing a new point.
    pub fn is_resamplable(&self) -> bool {
        matches!(self, Error::PoleProximity { .. } | Error::DivisionByZero(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
