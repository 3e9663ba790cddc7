//! The group relation attached to a periodic mutation sequence.

use cdl_pattern::PatternRun;

use crate::group::{GroupContext, GroupElement};
use crate::series::rat_i;
use crate::ScatterError;

/// `Ψ[c⁺(P−1)]^{ε_{P−1}δ_{k_{P−1}}} ⋯ Ψ[c⁺(0)]^{ε₀δ_{k₀}}` in the group of the
/// run's skew form, principal-extended when singular.
pub fn period_relation_product(run: &PatternRun, trunc: i64) -> Result<GroupElement, ScatterError> {
    let ctx = GroupContext::from_decomposition(&run.word.decomposition, trunc)?;
    let mut g = GroupElement::identity(&ctx);
    for s in 0..run.len() {
        let k = run.direction(s);
        let c = rat_i(run.eps[s] * run.word.delta(k));
        g = g.left_mul_psi(&run.c_plus[s], &c);
    }
    Ok(g)
}

/// Checks that the product over a periodic run is the identity to degree `ℓ`.
pub fn period_relation_check(run: &PatternRun, trunc: i64) -> Result<(), ScatterError> {
    if run.detect_period().is_none() {
        return Err(ScatterError::NotPeriodic);
    }
    match period_relation_product(run, trunc)?.lowest_discrepancy()? {
        None => Ok(()),
        Some((degree, _)) => Err(ScatterError::RelationFails { degree }),
    }
}
