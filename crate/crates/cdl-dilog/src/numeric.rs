//! Numeric sampling of the period identities.

use std::collections::HashMap;

use cdl_algebra::{atom, AtomId, FactoredSF};
use cdl_pattern::{di_weights, DIWeights, PatternRun};
use cdl_seed::Permutation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{mod_rogers, DilogError, PI2_6};

/// Outcome of [`verify_period_di`].
#[derive(Clone, Debug)]
pub struct DIReport {
    pub weights: DIWeights,
    pub samples: usize,
    pub rng_seed: u64,
    /// Worst absolute residuals of the three forms: `L̃(y)`, `L̃(y⁻¹)` and the signed sum.
    pub max_abs_residual: [f64; 3],
    /// The constant `N₋` of the first form, in units of `π²/6`.
    pub constant_term: i64,
}

impl DIReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n_plus": self.weights.n_plus,
            "n_minus": self.weights.n_minus,
            "samples": self.samples,
            "rng_seed": self.rng_seed,
            "max_abs_residual": self.max_abs_residual,
            "constant_term": format!("{}*pi^2/6", self.constant_term),
        })
    }
}

/// The three weighted sums at one point.
#[derive(Clone, Copy, Debug)]
pub struct DISums {
    /// `Σ δ L̃(y_{k_s}(s))`.
    pub direct: f64,
    /// `Σ δ L̃(y_{k_s}(s)⁻¹)`.
    pub inverse: f64,
    /// `Σ ε δ L̃(y_{k_s}(s)^ε)`.
    pub signed: f64,
}

/// Log-uniform points in `[1e-2, 1e2]ⁿ`.
pub fn sample_points(n: usize, count: usize, rng_seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    (0..count)
        .map(|_| (0..n).map(|_| 10f64.powf(rng.gen_range(-2.0..2.0))).collect())
        .collect()
}

/// The y-values `y_{k_s}(s)` of a run as factored values.
fn mutated_values(run: &PatternRun) -> Vec<FactoredSF> {
    (0..run.len()).map(|s| run.separation_y(s, run.direction(s))).collect()
}

fn eval_all(values: &[FactoredSF], point: &[f64]) -> Result<Vec<f64>, DilogError> {
    let mut cache: HashMap<AtomId, f64> = HashMap::new();
    values
        .iter()
        .map(|v| {
            v.eval_with(point, |a| *cache.entry(a).or_insert_with(|| atom(a).eval_f64(point)))
                .map_err(DilogError::from)
        })
        .collect()
}

fn sums_from(run: &PatternRun, ys: &[f64]) -> Result<DISums, DilogError> {
    let mut out = DISums { direct: 0.0, inverse: 0.0, signed: 0.0 };
    for (s, &y) in ys.iter().enumerate() {
        let d = run.word.delta(run.direction(s)) as f64;
        let (l, linv) = (mod_rogers(y)?, mod_rogers(1.0 / y)?);
        out.direct += d * l;
        out.inverse += d * linv;
        out.signed += if run.eps[s] > 0 { d * l } else { -d * linv };
    }
    Ok(out)
}

/// The three weighted sums of a run at a positive point.
pub fn di_sums(run: &PatternRun, point: &[f64]) -> Result<DISums, DilogError> {
    if !run.has_f() {
        return Err(DilogError::MissingF);
    }
    let ys = eval_all(&mutated_values(run), point)?;
    sums_from(run, &ys)
}

/// Samples the three period identities at seeded log-uniform points.
pub fn verify_period_di(
    run: &PatternRun,
    nu: &Permutation,
    samples: usize,
    tol: f64,
    rng_seed: u64,
) -> Result<DIReport, DilogError> {
    if !run.has_f() {
        return Err(DilogError::MissingF);
    }
    if run.detect_period().as_ref() != Some(nu) {
        return Err(DilogError::NotPeriodic);
    }
    let weights = di_weights(run);
    let values = mutated_values(run);
    let targets = [weights.n_minus as f64 * PI2_6, weights.n_plus as f64 * PI2_6, 0.0];
    let names = ["direct", "inverse", "signed"];
    let mut worst = [0.0f64; 3];
    for point in sample_points(run.rank(), samples, rng_seed) {
        let ys = eval_all(&values, &point)?;
        let sums = sums_from(run, &ys)?;
        for (i, v) in [sums.direct, sums.inverse, sums.signed].into_iter().enumerate() {
            let r = (v - targets[i]).abs();
            if !(r <= tol) {
                return Err(DilogError::ToleranceExceeded { identity: names[i], residual: r, sample: point });
            }
            worst[i] = worst[i].max(r);
        }
    }
    Ok(DIReport { weights, samples, rng_seed, max_abs_residual: worst, constant_term: weights.n_minus })
}
