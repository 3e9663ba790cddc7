//! Real dilogarithm, Rogers dilogarithm and its modified form.

use crate::DilogError;
use std::f64::consts::PI;

/// `π²/6`.
pub const PI2_6: f64 = PI * PI / 6.0;

fn li2_series(x: f64) -> f64 {
    // |x| <= 1/2: terms decay at least like 2^-n.
    let mut sum = 0.0;
    let mut p = x;
    for n in 1..200 {
        let t = p / (n * n) as f64;
        sum += t;
        if t.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
        p *= x;
    }
    sum
}

/// The dilogarithm `Li₂(x)` for real `x ≤ 1`.
pub fn li2(x: f64) -> Result<f64, DilogError> {
    if !(x <= 1.0) {
        return Err(DilogError::Domain(x));
    }
    Ok(li2_unchecked(x))
}

fn li2_unchecked(x: f64) -> f64 {
    if x == 1.0 {
        PI2_6
    } else if x == 0.0 {
        0.0
    } else if x < -1.0 {
        // Inversion.
        let l = (-x).ln();
        -PI2_6 - 0.5 * l * l - li2_unchecked(1.0 / x)
    } else if x < -0.5 {
        // Landen: x/(x-1) lies in (1/3, 1/2].
        let l = (1.0 - x).ln();
        -li2_series(x / (x - 1.0)) - 0.5 * l * l
    } else if x <= 0.5 {
        li2_series(x)
    } else {
        // Reflection.
        PI2_6 - x.ln() * (1.0 - x).ln() - li2_series(1.0 - x)
    }
}

/// The Rogers dilogarithm `L(x) = Li₂(x) + ½ log x log(1−x)` on `[0, 1]`.
pub fn rogers(x: f64) -> Result<f64, DilogError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(DilogError::Domain(x));
    }
    Ok(rogers_unchecked(x))
}

fn rogers_unchecked(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if x == 1.0 {
        PI2_6
    } else if x <= 0.5 {
        li2_series(x) + 0.5 * x.ln() * (1.0 - x).ln()
    } else {
        PI2_6 - rogers_unchecked(1.0 - x)
    }
}

/// The modified Rogers dilogarithm `L̃(x) = L(x/(1+x))` for `x ≥ 0`; `+∞` maps to `π²/6`.
pub fn mod_rogers(x: f64) -> Result<f64, DilogError> {
    if x.is_nan() || x < 0.0 {
        return Err(DilogError::Domain(x));
    }
    if x.is_infinite() {
        return Ok(PI2_6);
    }
    if x > 1.0 {
        return Ok(PI2_6 - rogers_unchecked(1.0 / (1.0 + x)));
    }
    Ok(rogers_unchecked(x / (1.0 + x)))
}
