//! Tropical and symbolic periodicity of the bipartite Y-system run.

use cdl_pattern::{di_weights, run_pattern_budgeted, run_tropical, DIWeights, PatternError, PatternRun};
use cdl_seed::{DynkinType, IntMatrix, Permutation};
use serde_json::{json, Value};

use crate::{build_bipartite_word, BipartiteQuiver, YSystemError};

/// Default cap on the number of F-polynomial terms in one seed.
pub const DEFAULT_TERM_BUDGET: usize = 1_000_000;

/// Outcome of [`tropical_run`].
#[derive(Clone, Debug)]
pub struct TropicalReport {
    pub quiver: BipartiteQuiver,
    /// Number of composite mutations, `h + h′`.
    pub period: usize,
    /// The vertex permutation realized at the period.
    pub nu: Permutation,
    pub omega_pair_used: bool,
    /// Sign counts over composite steps `0..h+h′`.
    pub weights: DIWeights,
    /// C-matrices at composite times `0..=h+h′`.
    pub trace: Vec<IntMatrix>,
}

impl TropicalReport {
    pub fn to_json(&self) -> Value {
        json!({
            "X": self.quiver.x.name(),
            "Xp": self.quiver.xp.name(),
            "period": self.period,
            "nu": self.nu.to_json(),
            "omega_pair_used": self.omega_pair_used,
            "n_plus": self.weights.n_plus,
            "n_minus": self.weights.n_minus,
            "c_trace": self.trace,
        })
    }
}

/// Runs the tropical Y-system for `h + h′` composite steps and certifies the
/// half period, the `(ω, ω′)` permutation, the factorization property and the sign counts.
pub fn tropical_run(x: &DynkinType, xp: &DynkinType) -> Result<TropicalReport, YSystemError> {
    tropical_run_with(BipartiteQuiver::new(x, xp)?)
}

/// [`tropical_run`] for a quiver with explicit sign choices.
pub fn tropical_run_with(q: BipartiteQuiver) -> Result<TropicalReport, YSystemError> {
    let (x, xp) = (&q.x, &q.xp);
    let (h, hp) = (x.coxeter_number, xp.coxeter_number);
    let period = h + hp;
    let run = run_tropical(&build_bipartite_word(&q, period)?)?;
    let expected = q.omega_pair();
    match run.detect_period() {
        Some(nu) if nu == expected => {}
        other => return Err(YSystemError::Period(format!("expected {:?}, found {:?}", expected.images(), other))),
    }
    check_factorization(&q, &run, hp, period)?;
    let weights = di_weights(&run);
    let rr = (x.rank * xp.rank) as i64;
    if 2 * weights.n_plus != hp as i64 * rr || 2 * weights.n_minus != h as i64 * rr {
        return Err(YSystemError::Period(format!("sign counts {weights:?}")));
    }
    let trace = (0..=period).map(|s| run.step(q.offset(s)).c.clone()).collect();
    Ok(TropicalReport { period, omega_pair_used: !expected.is_identity(), nu: expected, weights, trace, quiver: q })
}

/// Only vertical neighbours of the mutated vertex change during the first `h′`
/// composite steps, only horizontal ones afterwards.
fn check_factorization(q: &BipartiteQuiver, run: &PatternRun, hp: usize, period: usize) -> Result<(), YSystemError> {
    for s in 0..period {
        for t in q.offset(s)..q.offset(s + 1) {
            let k = run.direction(t);
            let (before, after) = (run.step(t), run.step(t + 1));
            for i in (0..q.size()).filter(|&i| i != k) {
                if before.c_vector(i) != after.c_vector(i) {
                    let ok = if s < hp { q.vertical(i, k) } else { q.horizontal(i, k) };
                    if !ok {
                        return Err(YSystemError::Factorization { step: s });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Outcome of [`symbolic_half_periodicity`].
#[derive(Clone, Debug)]
pub struct SymbolicReport {
    pub quiver: BipartiteQuiver,
    /// The full run over `2(h + h′)` composite steps.
    pub run: PatternRun,
    /// Largest number of F-polynomial terms in one seed.
    pub max_terms: usize,
}

/// Checks `y_{a,a′}(s + h + h′) = y_{ω(a),ω′(a′)}(s)` on the F-polynomial level for all
/// composite times `0 ≤ s ≤ h + h′`.
pub fn symbolic_half_periodicity(x: &DynkinType, xp: &DynkinType, budget: usize) -> Result<SymbolicReport, YSystemError> {
    let q = BipartiteQuiver::new(x, xp)?;
    let half = x.coxeter_number + xp.coxeter_number;
    let run = match run_pattern_budgeted(&build_bipartite_word(&q, 2 * half)?, budget) {
        Err(PatternError::BudgetExceeded { .. }) => return Err(YSystemError::BudgetExceeded(budget)),
        r => r?,
    };
    let nu = q.omega_pair();
    for s in 0..=half {
        let (t0, t1) = (q.offset(s), q.offset(s + half));
        for v in 0..q.size() {
            let later = run.separation_y(t1, v);
            let earlier = run.separation_y(t0, nu.apply(v));
            if later != earlier && !later.value_eq(&earlier) {
                return Err(YSystemError::Period(format!("y_{} at composite time {}", v + 1, s + half)));
            }
        }
    }
    if run.detect_period().is_none_or(|p| !p.is_identity()) {
        return Err(YSystemError::Period("full period".into()));
    }
    let max_terms = run.steps.iter().map(|st| st.f.iter().map(|f| f.nterms()).sum()).max().unwrap_or(0);
    Ok(SymbolicReport { quiver: q, run, max_terms })
}
