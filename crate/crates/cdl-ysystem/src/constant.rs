//! The constant Y-system of type `(X, A_{ℓ−1})` and its dilogarithm sum.

use cdl_dilog::{mod_rogers, PI2_6};
use cdl_seed::DynkinType;
use num_integer::Integer;
use serde_json::{json, Value};

use crate::YSystemError;

const MAX_ITERATIONS: usize = 1_000_000;
const TOLERANCE: f64 = 1e-13;

/// The positive solution `y[a][m−1] = y_m^{(a)}` and both sides of the sum rule.
#[derive(Clone, Debug)]
pub struct ConstantSolution {
    pub values: Vec<Vec<f64>>,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs` in units of `π²/6` as `(numerator, denominator)`.
    pub rhs_rational: (i64, i64),
    pub iterations: usize,
    pub residual: f64,
}

impl ConstantSolution {
    pub fn to_json(&self) -> Value {
        json!({
            "values": self.values,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "rhs_units_pi2_6": format!("{}/{}", self.rhs_rational.0, self.rhs_rational.1),
            "iterations": self.iterations,
            "residual": self.residual,
        })
    }
}

/// Half the log of the right-hand side, `½ log(Π_{b∼a}(1+y_m^b) / ((1+1/y_{m−1}^a)(1+1/y_{m+1}^a)))`.
fn half_log_rhs(x: &DynkinType, logs: &[Vec<f64>], a: usize, m: usize) -> f64 {
    let levels = logs[a].len();
    let mut v = 0.0;
    for b in x.neighbors(a) {
        v += logs[b][m].exp().ln_1p();
    }
    if m > 0 {
        v -= (-logs[a][m - 1]).exp().ln_1p();
    }
    if m + 1 < levels {
        v -= (-logs[a][m + 1]).exp().ln_1p();
    }
    0.5 * v
}

/// Solves the constant Y-system by damped fixed-point iteration in log coordinates.
pub fn constant_ysystem_solve(x: &DynkinType, level: usize) -> Result<ConstantSolution, YSystemError> {
    if !x.is_simply_laced() {
        return Err(YSystemError::NotSimplyLaced(x.name()));
    }
    if level < 2 {
        return Err(YSystemError::BadLevel);
    }
    let (r, levels) = (x.rank, level - 1);
    let mut logs = vec![vec![0.0f64; levels]; r];
    let damping = 0.5;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let target: Vec<Vec<f64>> = (0..r).map(|a| (0..levels).map(|m| half_log_rhs(x, &logs, a, m)).collect()).collect();
        residual = 0.0;
        for a in 0..r {
            for m in 0..levels {
                residual = residual.max((target[a][m] - logs[a][m]).abs());
                logs[a][m] += damping * (target[a][m] - logs[a][m]);
            }
        }
        if residual <= TOLERANCE {
            break;
        }
    }
    if residual > TOLERANCE {
        return Err(YSystemError::NoConvergence { iterations, residual });
    }
    let values: Vec<Vec<f64>> = logs.iter().map(|row| row.iter().map(|l| l.exp()).collect()).collect();
    let mut lhs = 0.0;
    for row in &values {
        for &y in row {
            lhs += mod_rogers(y)?;
        }
    }
    let h = x.coxeter_number as i64;
    let (num, den) = ((r * levels) as i64 * h, h + level as i64);
    let g = num.gcd(&den);
    let rhs_rational = (num / g, den / g);
    let rhs = rhs_rational.0 as f64 / rhs_rational.1 as f64 * PI2_6;
    Ok(ConstantSolution { values, lhs, rhs, rhs_rational, iterations, residual })
}
