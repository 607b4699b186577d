use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("correlated strategy is not a product distribution")]
    NotProduct,
    #[error("quadratic field mismatch: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(u32, u32),
    #[error("direction must be nonzero and have length {0}")]
    InvalidDirection(usize),
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("weights must be a nonzero vector of length {0}")]
    InvalidWeights(usize),
    #[error("operation supports {expected}-player games only, got {actual}")]
    UnsupportedArity { expected: usize, actual: usize },
    #[error("plotting requires a 2-player game, got {0} players")]
    PlanarOnly(usize),
    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("sample budget exceeded: {requested} > {cap}")]
    ResolutionOverflow { requested: u128, cap: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
