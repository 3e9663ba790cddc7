//! Quantum mutations of Y-variables, expressed in the initial variables.

use std::sync::Arc;

use cdl_pattern::PatternRun;
use cdl_seed::{mutate_matrix, ExchangeMatrix, Permutation};

use crate::{QCoeff, QContext, QLaurentElement, QuantumError};

/// The exchange matrix `B(s)` and the images `Yᵢ(s)` in the initial algebra.
#[derive(Clone, Debug)]
pub struct QState {
    pub b: ExchangeMatrix,
    pub ys: Vec<QLaurentElement>,
}

impl QState {
    pub fn initial(ctx: &Arc<QContext>, b: ExchangeMatrix) -> Self {
        let ys = (0..ctx.rank()).map(|i| QLaurentElement::generator(ctx, i)).collect();
        QState { b, ys }
    }

    pub fn context(&self) -> &Arc<QContext> {
        self.ys[0].context()
    }

    /// Whether `Yᵢ(s) = Y_{ν⁻¹(i)}` for every `i`, i.e. `Y(s) = νY(0)`.
    pub fn is_permuted_initial(&self, nu: &Permutation) -> Result<bool, QuantumError> {
        let ctx = self.context();
        for (i, y) in self.ys.iter().enumerate() {
            let j = nu.inverse().apply(i);
            if !y.agrees_with(&QLaurentElement::generator(ctx, j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The exchange relation in sign-`eps` form:
/// `Yᵢ ↦ q^{ω_{ki}[εb_{ki}]₊} Yᵢ Y_k^{[εb_{ki}]₊} Π_{u=1}^{|b_{ki}|} (1 + q_k^{ε·sgn(b_{ki})(2u−1)} Y_k^ε)^{−sgn(b_{ki})}`
/// and `Y_k ↦ Y_k⁻¹`.
fn exchange(state: &QState, k: usize, eps: i64) -> Result<Vec<QLaurentElement>, QuantumError> {
    let ctx = state.context();
    let yk = &state.ys[k];
    let yk_eps = if eps > 0 { yk.clone() } else { yk.inv_unit()? };
    let one = QLaurentElement::one(ctx);
    let qk = ctx.qk_exponent(k);
    let delta_k = ctx.delta()[k];
    let mut out = Vec::with_capacity(state.ys.len());
    for (i, yi) in state.ys.iter().enumerate() {
        if i == k {
            out.push(yk.inv_unit()?);
            continue;
        }
        let b = state.b.get(k, i);
        if b == 0 {
            out.push(yi.clone());
            continue;
        }
        let p = (eps * b).max(0);
        // q^{ω_{ki} p} with ω_{ki} = b_{ki}/δ_k.
        let scalar = QCoeff::t_pow(ctx.d() * b * p / delta_k);
        let mut y = yi.mul(&yk.pow(p)?)?.scale(&scalar);
        let sgn = b.signum();
        for u in 1..=b.abs() {
            let factor = one.add(&yk_eps.scale(&QCoeff::t_pow(qk * eps * sgn * (2 * u - 1))))?;
            y = y.mul(&factor.pow(-sgn)?)?;
        }
        out.push(y);
    }
    Ok(out)
}

/// One quantum mutation in direction `k`. Both sign forms of the exchange
/// relation are evaluated and must agree.
pub fn quantum_mutate(state: &QState, k: usize, eps: i64) -> Result<QState, QuantumError> {
    let a = exchange(state, k, eps)?;
    let b = exchange(state, k, -eps)?;
    for (i, (x, y)) in a.iter().zip(&b).enumerate() {
        if !x.agrees_with(y)? {
            return Err(QuantumError::EpsilonMismatch { k, i });
        }
    }
    Ok(QState { b: mutate_matrix(&state.b, k, eps)?, ys: a })
}

/// The states `Y(0), …, Y(P)` along a run, using its tropical signs.
pub fn quantum_run(run: &PatternRun, trunc: i64) -> Result<Vec<QState>, QuantumError> {
    let ctx = QContext::from_decomposition(&run.word.decomposition, trunc)?;
    let mut states = vec![QState::initial(&ctx, run.word.matrix.clone())];
    for (s, &k) in run.word.dirs.iter().enumerate() {
        let next = quantum_mutate(states.last().unwrap(), k, run.eps[s])?;
        states.push(next);
    }
    Ok(states)
}

