use crate::curve::CoordinateForm;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("expected a point in {expected:?} form, got {got:?}")]
    FormMismatch {
        expected: CoordinateForm,
        got: CoordinateForm,
    },
    #[error("projective triple has all coordinates zero")]
    ZeroTriple,
    #[error("point is not on the curve: {0}")]
    NotOnCurve(String),
    #[error("degenerate or invalid triangle: {0}")]
    DegenerateTriangle(String),
    #[error("zero gradient at {0}; the point is singular")]
    SingularPoint(String),
    #[error("x = {0} is the x-coordinate of a 2-torsion point; the tangent is vertical")]
    TwoTorsionDuplication(String),
    #[error("growth certificate precondition failed: {0}")]
    GrowthPrecondition(String),
    #[error(
        "numerators stopped growing at step {step}; this contradicts the infinite-order argument"
    )]
    GrowthBreach { step: usize },
    #[error("{0} is a prime of bad reduction")]
    BadPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero in Q(sqrt 17)")]
    DivisionByZero,
    #[error("descent system not satisfied: {0}")]
    WitnessRejected(String),
    #[error("search constraint violated: {0}")]
    SearchConstraint(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
