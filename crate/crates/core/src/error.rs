use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("matrix is not skew-symmetric: {0}")]
    NotSkew(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("pencil has an infinite eigenvalue: rank(B) = {rank_b} < pencil rank {pencil_rank}")]
    InfiniteEigenvalue { rank_b: usize, pencil_rank: usize },
    #[error("elementary divisors do not pair: {0}")]
    PairingViolation(String),
    #[error("eigenvalue descriptor is not rational: {0}")]
    NonRationalEigenvalue(String),
    #[error("characteristic polynomial denominator vanishes at the point")]
    DenominatorVanishes,
    #[error("point is not generic: {reason}")]
    NonGenericPoint { reason: String },
    #[error("pointwise characteristic degree {pointwise} exceeds generic degree {generic}")]
    DegreeJump { generic: usize, pointwise: usize },
    #[error("no regular value found after {attempts} attempts")]
    NoRegularValue { attempts: usize },
    #[error("Jacobi identity fails at {indices:?}: residual {residual}")]
    JacobiViolation {
        indices: Vec<usize>,
        residual: String,
    },
    #[error("characteristic polynomial has no rational root at the point")]
    NoRationalRoot,
    #[error("rational root is multiple at the point")]
    MultipleRoot,
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
}

impl Error {
    /// Stable upper-case identifier used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "PARSE",
            Error::Shape(_) => "SHAPE",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::ZeroPolynomial => "ZERO_POLYNOMIAL",
            Error::NotSkew(_) => "NOT_SKEW",
            Error::Singular(_) => "SINGULAR",
            Error::InfiniteEigenvalue { .. } => "INFINITE_EIGENVALUE",
            Error::PairingViolation(_) => "PAIRING_VIOLATION",
            Error::NonRationalEigenvalue(_) => "NON_RATIONAL_EIGENVALUE",
            Error::DenominatorVanishes => "DENOMINATOR_VANISHES",
            Error::NonGenericPoint { .. } => "NON_GENERIC_POINT",
            Error::DegreeJump { .. } => "DEGREE_JUMP",
            Error::NoRegularValue { .. } => "NO_REGULAR_VALUE",
            Error::JacobiViolation { .. } => "JACOBI_VIOLATION",
            Error::NoRationalRoot => "NO_RATIONAL_ROOT",
            Error::MultipleRoot => "MULTIPLE_ROOT",
            Error::InternalConsistency(_) => "INTERNAL_CONSISTENCY",
            Error::UnknownName(_) => "UNKNOWN_NAME",
        }
    }

    /// Internal-consistency failures indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InternalConsistency(_) | Error::PairingViolation(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
