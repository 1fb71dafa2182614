use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input vectors are linearly dependent")]
    DependentInput,
    #[error("matrix has rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("a pole vanishes at the evaluation point")]
    PoleHit,
    #[error("not a polar germ: {0}")]
    NotPolar(String),
    #[error("ambient dimension {dim} exceeds the cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("the union of the cones contains a line")]
    NotStrictlyConvexUnion,
    #[error("not a subdivision: {0}")]
    NotASubdivision(String),
    #[error("not a pan-subdivision: {0}")]
    NotAPanSubdivision(String),
    #[error("derivation does not annihilate the numerator variables")]
    OrthogonalityViolated,
    #[error("germ has no Laurent expansion on the given support: {0}")]
    NotInLaurentSubspace(String),
    #[error("pole outside the arrangement: {0}")]
    NotInRDelta(String),
    #[error("cone is not simplicial")]
    NotSimplicial,
    #[error("lattice cone is not smooth")]
    NotSmooth,
    #[error("cone does not span a two-dimensional space")]
    NotDimensionTwo,
    #[error("no smooth subdivision available for this cone")]
    NoSmoothSubdivisionAvailable,
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("denominator is not a product of linear forms: {0}")]
    NonLinearPole(String),
    #[error("format error at {location}: {msg}")]
    Format { location: String, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. } | Error::UnknownVariable { .. } | Error::Format { .. } => 2,
            Error::DimensionCapExceeded { .. } => 4,
            _ => 3,
        }
    }

    pub fn format(location: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Format { location: location.into(), msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
