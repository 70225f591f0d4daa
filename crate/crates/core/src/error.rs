use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot rescale zero vector")]
    ZeroVector,

    #[error("rescale target must be positive and finite, got {0}")]
    BadRescaleTarget(f64),

    #[error("invalid weight specification {spec:?}: {reason}")]
    WeightSpec { spec: String, reason: String },

    #[error("weight w_{index} = {value} exceeds declared sup {declared_sup}")]
    WeightExceedsSup { index: usize, value: f64, declared_sup: f64 },

    #[error("omega = {omega} is outside eigen disk (|omega| = {modulus}, usable radius {radius})")]
    OutsideEigenDisk { omega: String, modulus: f64, radius: f64 },

    #[error(
        "root of unity outside eigen disk: |s| = 1 but usable radius is {radius} (the disk misses the unit circle)"
    )]
    RootOutsideDisk { radius: f64 },

    #[error("modulus constraint violated: {0}")]
    ModulusConstraint(String),

    #[error("gamma exceeds eigen disk radius — norm-unimodality not certified by this construction (gamma = {gamma}, radius = {radius})")]
    GammaExceedsRadius { gamma: f64, radius: f64 },

    #[error("no periodic power of the projected point found up to {max_period} (best residual {residual:e})")]
    NotPeriodic { max_period: u64, residual: f64 },

    #[error("witness generation failed at stage k = {stage}: {source}")]
    WitnessStage { stage: usize, source: Box<Error> },

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    #[error("invalid vector data: {0}")]
    VectorFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(field: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { field: field.to_string(), reason: reason.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
