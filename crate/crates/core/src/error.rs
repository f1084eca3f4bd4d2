use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a positive integer, got {0}")]
    NonPositive(i128),
    #[error("valuation of zero is infinite")]
    ZeroValuation,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("all coordinates are zero")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("negative coordinate in a lattice vector")]
    NegativeCoordinate,
    #[error("a monoid needs at least one nonzero generator")]
    EmptyMonoid,
    #[error("ray unsupported: {0:?} lies outside every rational cone")]
    RayUnsupported(Vec<u64>),
    #[error("safety cap of {0} exceeded")]
    BoundExceeded(u64),
    #[error("generators have gcd {0} > 1, so the gap set is infinite")]
    InfiniteGapSet(u64),
    #[error("exponent map has an all-zero column {0}")]
    ZeroColumn(usize),
    #[error("fiber {0:?} has no multiplicities")]
    EmptyFiber(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("invalid multiplicity {0}")]
    InvalidMultiplicity(String),
    #[error("a line bundle of nonzero degree cannot be torsion")]
    InconsistentTorsion,
    #[error("point lies on the support of the divisor")]
    PointOnDelta,
    #[error("point lies on the divisor")]
    PointOnDivisor,
    #[error("degenerate point: a coordinate is zero")]
    DegeneratePoint,
    #[error("not an abc triple: {0}")]
    NotATriple(String),
    #[error("unsupported field {0:?}; only Q is implemented")]
    UnsupportedField(String),
    #[error("support points {0} and {1} share a reduction at p = {2} outside S")]
    SupportNotDisjoint(usize, usize, u64),
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error("form coefficients have content {0} > 1")]
    NonPrimitiveForm(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
