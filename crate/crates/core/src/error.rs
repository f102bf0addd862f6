use thiserror::Error;
use wonderland_exact::ExactError;

#[derive(Debug, Error)]
pub enum WonderError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("sl_n needs n >= 2, got n = {0}")]
    RankTooSmall(usize),
    #[error("Killing form is degenerate")]
    DegenerateForm,
    #[error("structure constants are invalid: {0}")]
    InvalidAlgebra(String),
    #[error("not a Lagrangian splitting: {0}")]
    InvalidSplitting(String),
    #[error("the algebra has no matrix realization")]
    NoRealization,
    #[error("point lies outside the chart domain")]
    OutsideChart,
    #[error("expected a {expected}-dimensional solution space, found {found}")]
    SolutionDimension { expected: usize, found: usize },
    #[error("the zero matrix is not a projective point")]
    ZeroPoint,
    #[error("matrix has rank {0}, expected rank one")]
    NotRankOne(usize),
    #[error("point does not lie on the subvariety")]
    NotOnSubvariety,
    #[error("word uses generator {index} but only {count} are available")]
    GeneratorOutOfRange { index: i64, count: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("no overlap samples found")]
    NoOverlap,
    #[error("could not find enough independent sample points: {0}")]
    InsufficientSamples(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = WonderError> = std::result::Result<T, E>;
