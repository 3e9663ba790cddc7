use cdl_algebra::ExpVector;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuantumError {
    #[error("argument of a q-series must have strictly positive exponents, got shift {0}")]
    NonPositiveArgument(ExpVector),
    #[error("element has no invertible leading coefficient")]
    NonUnit,
    #[error("elements come from different contexts")]
    MixedContext,
    #[error("expected a nonzero nonnegative vector of the context rank, got {0}")]
    BadVector(ExpVector),
    #[error("quantum data {what} is not a multiple of 1/{d}")]
    BadQuantumData { what: String, d: i64 },
    #[error("skew form is singular; the y-representation is not faithful")]
    SingularOmega,
    #[error("invalid context: {0}")]
    BadContext(String),
    #[error("no known coefficients remain after truncation")]
    TruncationLoss,
    #[error("mutation in direction {k} depends on the sign choice at Y_{i}")]
    EpsilonMismatch { k: usize, i: usize },
    #[error("{identity} fails at Y^{exponent}: residual {residual}")]
    IdentityFails { identity: String, exponent: ExpVector, residual: String },
    #[error("q = 1 limit mismatch: {0}")]
    LimitMismatch(String),
    #[error("run is not periodic")]
    NotPeriodic,
    #[error(transparent)]
    Pattern(#[from] cdl_pattern::PatternError),
    #[error(transparent)]
    Seed(#[from] cdl_seed::SeedError),
    #[error(transparent)]
    Scatter(#[from] cdl_scatter::ScatterError),
}
