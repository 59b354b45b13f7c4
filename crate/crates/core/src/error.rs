use thiserror::Error;

/// Errors raised while building or querying the algebraic objects.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("reflection closure exceeded height bound {bound}; Cartan matrix is not of finite type")]
    NonFiniteType { bound: usize },

    #[error("unsupported algebra type `{0}`")]
    UnsupportedType(String),

    #[error("could not parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("Chevalley basis construction failed: {0}")]
    ConstructionFailure(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("linear system has no solution: {0}")]
    SingularSystem(String),

    #[error("principal decomposition failed: {0}")]
    DecompositionFailure(String),

    #[error("invariant space in degree {degree} has dimension {found}, expected {expected}")]
    WrongDimension {
        degree: usize,
        expected: usize,
        found: usize,
    },

    #[error("shift family members are linearly dependent (rank {rank} < {expected})")]
    DependentFamily { rank: usize, expected: usize },

    #[error("ad y is not invertible on n: root {root:?} vanishes on y")]
    NotInvertible { root: Vec<i64> },

    #[error("restricted generators are not unitriangular: {0}")]
    NotTriangular(String),

    #[error("point is not strongly regular (gradient rank {rank} < {expected})")]
    NotStronglyRegular { rank: usize, expected: usize },

    #[error("sampling region `{region}` exhausted after {attempts} attempts")]
    RegionExhausted { region: String, attempts: usize },

    #[error("no regular element found after {0} draws")]
    NoRegularElement(usize),

    #[error("cache i/o: {0}")]
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
        Error::Io(e.to_string())
    }
}
