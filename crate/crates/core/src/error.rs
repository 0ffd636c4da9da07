use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("trajectory validation failed:\n{0}")]
    Validation(crate::model::ValidationReport),

    #[error("too few frames: need at least {needed}, got {got}")]
    TooFewFrames { needed: usize, got: usize },

    #[error("no joint limits available for joint `{0}`")]
    MissingJointLimits(String),

    #[error("no foot geometry: mesh lacks foot vertex sets and skeleton lacks ankle/toe joints")]
    MissingFootGeometry,

    #[error("mesh has no faces")]
    EmptyMesh,

    #[error("score input `{name}` = {value} outside [0, 1]")]
    Domain { name: &'static str, value: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("missing score for pair `{pair_id}`, model `{model}`")]
    MissingScore { pair_id: String, model: String },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("bad container: {0}")]
    Format(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
