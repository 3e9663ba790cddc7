use cdl_algebra::ExpVector;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScatterError {
    #[error("skew form is singular; principal-extend it first")]
    SingularOmega,
    #[error("group elements come from different contexts")]
    MixedContext,
    #[error("expected a nonzero nonnegative vector of the active rank, got {0}")]
    BadVector(ExpVector),
    #[error("element is not a product of dilogarithm elements at degree {degree}")]
    NonFactorizable { degree: i64 },
    #[error("period relation fails at degree {degree}")]
    RelationFails { degree: i64 },
    #[error("loop identity leaves a nonzero residual: {terms}")]
    NonZeroResidual { terms: String },
    #[error("run is not periodic")]
    NotPeriodic,
    #[error("operation needs a rank-2 context")]
    NotRank2,
    #[error("invalid symmetrizer {0:?}")]
    BadDelta(Vec<i64>),
    #[error(transparent)]
    Pattern(#[from] cdl_pattern::PatternError),
}
