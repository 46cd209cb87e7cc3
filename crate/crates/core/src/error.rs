use thiserror::Error;

/// Errors raised by construction, analysis and file handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("coincident points")]
    CoincidentPoints,
    #[error("homogeneous pair (0, 0) does not represent a point")]
    ZeroPair,
    #[error("indeterminate point: U and W vanish simultaneously")]
    IndeterminatePoint,
    #[error("pole encountered: W vanishes")]
    PoleEncountered,
    #[error("degenerate arc: endpoints coincide")]
    DegenerateArc,
    #[error("reparametrization multiplier must be nonzero")]
    ZeroMultiplier,
    #[error("points p1, p2, p3 are not collinear")]
    NonCollinearInput,
    #[error("tangents v1, v2 are not orthogonal")]
    NonOrthogonalTangents,
    #[error("corner points are not concyclic")]
    NonConcyclicCorners,
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("incompatible faces: {0}")]
    IncompatibleFaces(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("slice determinant vanishes identically")]
    IdenticallyZero,
    #[error("degenerate cube: {0}")]
    DegenerateCube(String),
    #[error("numerically unclassifiable: {0}")]
    Unclassifiable(String),
    #[error("point lies too close to the singular locus")]
    PointNearSingularity,
    #[error("solver inconclusive: {0}")]
    SolverInconclusive(String),
    #[error("curve is singular")]
    SingularCurve,
    #[error("curve is not in symmetric form")]
    NotSymmetricForm,
    #[error("parameters out of region: {0}")]
    OutOfRegion(String),
    #[error("degenerate slice")]
    DegenerateSlice,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
