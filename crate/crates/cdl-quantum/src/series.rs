//! q-numbers, q-binomials, the q-exponential `e_q` and the quantum
//! dilogarithm `Ψ_q`, with the base given as a power `t^r`.

use cdl_algebra::ExpVector;

use crate::qcoeff::cyclotomic;
use crate::{QCoeff, QLaurentElement, QuantumError};

/// `(q; q)_n = Π_{i=1}^{n} (1 − q^i)` for `q = t^r`.
pub fn q_factorial(n: u32, r: i64) -> QCoeff {
    (1..=n as i64).fold(QCoeff::one(), |acc, i| acc.mul(&QCoeff::one().sub(&QCoeff::t_pow(r * i))))
}

/// `1/(q; q)_n`.
fn q_factorial_inv(n: u32, r: i64) -> QCoeff {
    (1..=n as i64).fold(QCoeff::one(), |acc, i| acc.mul(&QCoeff::recip_t_pow_minus_one(r * i).neg()))
}

/// `[n k]_q = (q)_n / ((q)_k (q)_{n−k})` for `q = t^r`, expanded as
/// `Π_m Φ_m(q)^{⌊n/m⌋ − ⌊k/m⌋ − ⌊(n−k)/m⌋}`.
pub fn q_binomial(n: u32, k: u32, r: i64) -> QCoeff {
    if k > n {
        return QCoeff::zero();
    }
    let mut p = vec![1i64];
    for m in 1..=n {
        let phi = cyclotomic(m);
        for _ in 0..(n / m - k / m - (n - k) / m) {
            let mut out = vec![0i64; p.len() + (phi.len() - 1) * r as usize];
            for (i, x) in p.iter().enumerate() {
                for (j, y) in phi.iter().enumerate() {
                    out[i + j * r as usize] += x * y;
                }
            }
            p = out;
        }
    }
    QCoeff::laurent(0, &p)
}

/// `[x]_q = (q^x − q^{−x})/(q − q^{−1})` for `q = t^d` and `q^x = t^k`.
pub fn q_number(k: i64, d: i64) -> QCoeff {
    QCoeff::t_pow(k).sub(&QCoeff::t_pow(-k)).mul(&QCoeff::recip_t_pow_minus_one(2 * d).mul_t(d))
}

/// Coefficient of `x^j` in `Ψ_q(x) = Σ (−q)^j / (q²; q²)_j x^j`, `q = t^r`.
pub fn psi_q_coefficient(j: u32, r: i64) -> QCoeff {
    let sign = if j.is_multiple_of(2) { 1 } else { -1 };
    QCoeff::t_pow(r * j as i64).scale(&cdl_algebra::int(sign)).mul(&q_factorial_inv(j, 2 * r))
}

/// Coefficient of `x^n` in `e_q(x) = Σ xⁿ/(q)_n`, `q = t^r`.
pub fn e_q_coefficient(n: u32, r: i64) -> QCoeff {
    q_factorial_inv(n, r)
}

/// `Σ_j c_j·arg^j` for an argument whose terms all have positive degree.
/// The result is known to the absolute degree up to which `arg` is known.
pub fn power_series(arg: &QLaurentElement, coeff: impl Fn(u32) -> QCoeff) -> Result<QLaurentElement, QuantumError> {
    let base = arg.shift();
    let zero = ExpVector::zeros(base.dim());
    if !base.is_nonnegative() || arg.terms().any(|(m, _)| *m == zero) {
        return Err(QuantumError::NonPositiveArgument(base.clone()));
    }
    let target = arg.precision() + base.degree();
    let mut acc = QLaurentElement::constant(arg.context(), coeff(0)).truncate(target);
    let mut pow = QLaurentElement::one(arg.context());
    for j in 1..=target.max(0) as u32 {
        pow = pow.mul(arg)?;
        acc = acc.add(&pow.scale(&coeff(j)))?;
    }
    Ok(acc)
}

/// `Ψ_q(arg)` with `q = t^r`.
pub fn psi_q_series(arg: &QLaurentElement, r: i64) -> Result<QLaurentElement, QuantumError> {
    power_series(arg, |j| psi_q_coefficient(j, r))
}

/// `Ψ_q(arg)^{±1}`.
pub fn psi_q_power(arg: &QLaurentElement, r: i64, eps: i64) -> Result<QLaurentElement, QuantumError> {
    let p = psi_q_series(arg, r)?;
    if eps < 0 {
        p.inv_unit()
    } else {
        Ok(p)
    }
}

/// `e_q(arg)` with `q = t^r`.
pub fn e_q_series(arg: &QLaurentElement, r: i64) -> Result<QLaurentElement, QuantumError> {
    power_series(arg, |n| e_q_coefficient(n, r))
}
