use thiserror::Error;

#[derive(Debug, Error)]
pub enum YSystemError {
    #[error("{0} is not simply laced")]
    NotSimplyLaced(String),
    #[error("reflection and recursion routes disagree at vertex {a}, k = {k}")]
    RouteMismatch { a: usize, k: i64 },
    #[error("orbit of vertex {a} does not end at the image under the diagram involution")]
    OrbitEndpoint { a: usize },
    #[error("longest element check failed for {0}")]
    LongestElement(String),
    #[error("composite mutations do not commute or do not reverse the quiver")]
    QuiverShape,
    #[error("periodicity failure: {0}")]
    Period(String),
    #[error("factorization property fails at composite step {step}")]
    Factorization { step: usize },
    #[error("F-polynomial size budget of {0} terms exceeded")]
    BudgetExceeded(usize),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("level must be at least 2")]
    BadLevel,
    #[error(transparent)]
    Pattern(#[from] cdl_pattern::PatternError),
    #[error(transparent)]
    Seed(#[from] cdl_seed::SeedError),
    #[error(transparent)]
    Dilog(#[from] cdl_dilog::DilogError),
}
