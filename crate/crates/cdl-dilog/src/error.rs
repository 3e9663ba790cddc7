use thiserror::Error;

#[derive(Debug, Error)]
pub enum DilogError {
    #[error("argument {0} outside the domain")]
    Domain(f64),
    #[error("{identity} residual {residual:e} exceeds tolerance at sample {sample:?}")]
    ToleranceExceeded { identity: &'static str, residual: f64, sample: Vec<f64> },
    #[error("wedge element has {} surviving pairs", .0)]
    NonZeroWedge(usize),
    #[error("V-element step mismatch at step {0}")]
    StepMismatch(usize),
    #[error("run is not periodic with the given permutation")]
    NotPeriodic,
    #[error("run carries no F-polynomials")]
    MissingF,
    #[error(transparent)]
    Algebra(#[from] cdl_algebra::AlgebraError),
}
