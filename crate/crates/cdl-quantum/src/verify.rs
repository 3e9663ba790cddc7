//! Checks of the q-series identities, the quantum dilogarithm identities and
//! their classical limits. Each check either returns a report of what was
//! compared or fails with the first nonzero residual coefficient.

use std::collections::BTreeMap;
use std::sync::Arc;

use cdl_algebra::{int, rat, BigInt, BigRational, ExpVector, MultiPoly};
use cdl_pattern::PatternRun;
use cdl_scatter::{build_rank2_csd, ordered_product, GroupElement};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::series::{e_q_series, power_series, psi_q_power, psi_q_series, q_binomial};
use crate::{q_ordered_product, quantum_run, QCoeff, QContext, QDilogFactor, QGroupElement, QLaurentElement, QuantumError};

/// The identities a check compared, and the degree budget used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QReport {
    pub name: String,
    pub degree: i64,
    pub checks: Vec<String>,
}

impl QReport {
    fn new(name: &str, degree: i64) -> Self {
        QReport { name: name.to_string(), degree, checks: Vec::new() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "identity": self.name, "degree": self.degree, "checks": self.checks, "passed": true })
    }
}

fn expect_equal(name: &str, lhs: &QLaurentElement, rhs: &QLaurentElement) -> Result<(), QuantumError> {
    match lhs.first_difference(rhs)? {
        None => Ok(()),
        Some((exponent, c)) => Err(QuantumError::IdentityFails { identity: name.to_string(), exponent, residual: c.to_string() }),
    }
}

fn expect_group_equal(name: &str, lhs: &QGroupElement, rhs: &QGroupElement) -> Result<(), QuantumError> {
    match lhs.first_difference(rhs)? {
        None => Ok(()),
        Some((i, exponent, c)) => Err(QuantumError::IdentityFails {
            identity: format!("{name} (image of Y{})", i + 1),
            exponent,
            residual: c.to_string(),
        }),
    }
}

fn std_omega(c: &BigRational) -> Vec<Vec<BigRational>> {
    vec![vec![BigRational::zero(), -c.clone()], vec![c.clone(), BigRational::zero()]]
}

/// The smallest multiple of `base` clearing every denominator.
fn root_order(base: i64, values: &[&BigRational]) -> i64 {
    values.iter().fold(BigInt::from(base), |l, v| l.lcm(v.denom())).try_into().expect("small root order")
}

/// `exp(L)` for an element without constant term.
fn exp_series(l: &QLaurentElement) -> Result<QLaurentElement, QuantumError> {
    power_series(l, |j| {
        let f: BigInt = (1..=j as i64).map(BigInt::from).product();
        QCoeff::from_rational(BigRational::new(BigInt::one(), f))
    })
}

/// `Ψ_q(q²x) = (1 + qx)Ψ_q(x)`, `Ψ_q(0) = 1`, and the agreement of the
/// power series with its exponential form `exp(Σ (−1)^{j+1} x^j/(j(q^j − q^{−j})))`.
pub fn psi_q_difference_check(trunc: i64) -> Result<QReport, QuantumError> {
    let ctx = QContext::commutative(1, trunc);
    let x = QLaurentElement::generator(&ctx, 0);
    let one = QLaurentElement::one(&ctx);
    let mut report = QReport::new("quantum dilogarithm difference relation", trunc);
    let psi = psi_q_series(&x, 1)?;
    let lhs = psi_q_series(&x.scale(&QCoeff::t_pow(2)), 1)?;
    let rhs = one.add(&x.scale(&QCoeff::t_pow(1)))?.mul(&psi)?;
    expect_equal("Ψ_q(q²x) = (1+qx)Ψ_q(x)", &lhs, &rhs)?;
    report.checks.push("Ψ_q(q²x) = (1+qx)Ψ_q(x)".into());
    if !psi.coeff(&ExpVector(vec![0])).is_one() {
        return Err(QuantumError::IdentityFails { identity: "Ψ_q(0) = 1".into(), exponent: ExpVector(vec![0]), residual: psi.coeff(&ExpVector(vec![0])).to_string() });
    }
    report.checks.push("Ψ_q(0) = 1".into());
    let mut log = QLaurentElement::zero(&ctx);
    for j in 1..=trunc {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let c = QCoeff::from_int(sign).div(&QCoeff::t_pow(j).sub(&QCoeff::t_pow(-j)).scale(&int(j)));
        log = log.add(&QLaurentElement::monomial(&ctx, ExpVector(vec![j as i32]), c))?;
    }
    expect_equal("Ψ_q(x) = exp(Σ (−1)^{j+1}x^j/(j(q^j−q^{−j})))", &psi, &exp_series(&log)?)?;
    report.checks.push("Ψ_q series equals its exponential form".into());
    Ok(report)
}

/// The q-binomial recursion and `q = 1` limit for `n ≤ nmax`, and the
/// q-binomial theorem `(a+b)ⁿ = Σ [n k]_q b^k a^{n−k}` under `ab = qba` for `n ≤ nthm`.
pub fn q_binomial_check(nmax: u32, nthm: u32) -> Result<QReport, QuantumError> {
    let mut report = QReport::new("q-binomial coefficients", nthm as i64);
    for n in 1..=nmax {
        let mut classical = BigInt::one();
        for k in 0..=n {
            let c = q_binomial(n, k, 1);
            if k > 0 {
                let rec = q_binomial(n - 1, k, 1).add(&q_binomial(n - 1, k - 1, 1).mul_t((n - k) as i64));
                if rec != c {
                    return Err(QuantumError::IdentityFails {
                        identity: format!("q-binomial recursion at n = {n}, k = {k}"),
                        exponent: ExpVector(vec![]),
                        residual: rec.sub(&c).to_string(),
                    });
                }
                classical = classical * BigInt::from(n - k + 1) / BigInt::from(k);
            }
            if c.eval_at_one() != Some(BigRational::from_integer(classical.clone())) {
                return Err(QuantumError::LimitMismatch(format!("[{n} {k}]_q at q = 1 is not {classical}")));
            }
        }
    }
    report.checks.push(format!("recursion and q = 1 limit for n ≤ {nmax}"));
    // a = Y₁, b = Y₂ with ab = qba, i.e. {e₁, e₂} = 1/2 and q = t².
    let ctx = QContext::new(std_omega(&rat(-1, 2)), vec![1, 1], 2, nthm as i64)?;
    let a = QLaurentElement::generator(&ctx, 0);
    let b = QLaurentElement::generator(&ctx, 1);
    let sum = a.add(&b)?;
    for n in 1..=nthm {
        let lhs = sum.pow(n as i64)?;
        let mut rhs = QLaurentElement::zero(&ctx);
        for k in 0..=n {
            let term = b.pow(k as i64)?.mul(&a.pow((n - k) as i64)?)?.scale(&q_binomial(n, k, 2));
            rhs = rhs.add(&term)?;
        }
        expect_equal(&format!("q-binomial theorem at n = {n}"), &lhs, &rhs)?;
    }
    report.checks.push(format!("q-binomial theorem for n ≤ {nthm}"));
    Ok(report)
}

/// A two-generator algebra with `ab = qba`: returns `(a, b)`.
fn qba_pair(trunc: i64) -> Result<(QLaurentElement, QLaurentElement), QuantumError> {
    let ctx = QContext::new(std_omega(&rat(-1, 2)), vec![1, 1], 2, trunc)?;
    Ok((QLaurentElement::generator(&ctx, 0), QLaurentElement::generator(&ctx, 1)))
}

/// The q-exponential identities, the pentagon identity for `Ψ_q`, the
/// pentagon relation for quantum dilogarithm elements with `{n₂, n₁} = c`
/// for each `(c, b₁, b₂)`, the commutative relation, and the fission-fusion formula.
pub fn verify_q_pentagon(trunc: i64, triples: &[(BigRational, BigRational, BigRational)]) -> Result<QReport, QuantumError> {
    let mut report = QReport::new("quantum pentagon relations", trunc);
    // e_q identities, q = t².
    let (a, b) = qba_pair(trunc)?;
    let e = |x: &QLaurentElement| e_q_series(x, 2);
    let ba = b.mul(&a)?;
    let b_minus_ba = b.sub(&ba)?;
    let ea_eb = e(&a)?.mul(&e(&b)?)?;
    expect_equal("e_q(b)e_q(a) = e_q(a+b)", &e(&b)?.mul(&e(&a)?)?, &e(&a.add(&b)?)?)?;
    expect_equal("e_q(a)e_q(b) = e_q(b−ba)e_q(a)", &ea_eb, &e(&b_minus_ba)?.mul(&e(&a)?)?)?;
    expect_equal("e_q(a)e_q(b) = e_q(b)e_q(−ba)e_q(a)", &ea_eb, &e(&b)?.mul(&e(&ba.neg())?)?.mul(&e(&a)?)?)?;
    expect_equal("e_q(a)e_q(b) = e_q(b−ba+a)", &ea_eb, &e(&b_minus_ba.add(&a)?)?)?;
    report.checks.extend(
        ["e_q(b)e_q(a) = e_q(a+b)", "e_q(a)e_q(b) = e_q(b−ba)e_q(a)", "e_q(a)e_q(b) = e_q(b)e_q(−ba)e_q(a) = e_q(b−ba+a)"]
            .map(String::from),
    );
    // Ψ_q(u)Ψ_q(v) = Ψ_q(v)Ψ_q(qvu)Ψ_q(u) with uv = q²vu, i.e. {e₁, e₂} = 1.
    let ctx = QContext::new(std_omega(&int(-1)), vec![1, 1], 1, trunc)?;
    let u = QLaurentElement::generator(&ctx, 0);
    let v = QLaurentElement::generator(&ctx, 1);
    let qvu = v.mul(&u)?.scale(&QCoeff::t_pow(1));
    let psi = |x: &QLaurentElement| psi_q_series(x, 1);
    let lhs = psi(&u)?.mul(&psi(&v)?)?;
    let rhs = psi(&v)?.mul(&psi(&qvu)?)?.mul(&psi(&u)?)?;
    expect_equal("Ψ_q(u)Ψ_q(v) = Ψ_q(v)Ψ_q(qvu)Ψ_q(u)", &lhs, &rhs)?;
    report.checks.push("Ψ_q(u)Ψ_q(v) = Ψ_q(v)Ψ_q(qvu)Ψ_q(u)".into());
    // Element-level pentagon with n₁ = e₁, n₂ = e₂ and {e₂, e₁} = c.
    let e1 = ExpVector(vec![1, 0]);
    let e2 = ExpVector(vec![0, 1]);
    for (c, b1, b2) in triples {
        let d = root_order(1, &[c, b1, b2]);
        let ctx = QContext::new(std_omega(c), vec![1, 1], d, trunc)?;
        let f = |n: &ExpVector, b: &BigRational| QDilogFactor::new(n.clone(), c.clone(), b.clone());
        let lhs = q_ordered_product(&ctx, &[f(&e2, b2), f(&e1, b1)])?;
        let rhs = q_ordered_product(&ctx, &[f(&e1, b1), f(&(&e1 + &e2), &(b1 + b2)), f(&e2, b2)])?;
        let name = format!("pentagon relation for c = {c}, b₁ = {b1}, b₂ = {b2}");
        expect_group_equal(&name, &lhs, &rhs)?;
        report.checks.push(name);
    }
    // Commutative relation on a common ray.
    let ctx = QContext::new(std_omega(&int(1)), vec![1, 1], 2, trunc)?;
    let x = QDilogFactor::new(ExpVector(vec![1, 1]), rat(1, 2), rat(1, 2));
    let y = QDilogFactor::new(ExpVector(vec![2, 2]), int(1), int(-1));
    expect_group_equal("commutative relation", &q_ordered_product(&ctx, &[x.clone(), y.clone()])?, &q_ordered_product(&ctx, &[y, x])?)?;
    report.checks.push("commutative relation when {n₂, n₁} = 0".into());
    // Fission-fusion: Ψ_{a,b}[n] = Π_{t=1}^{p} Ψ_{pa, b+(2t−p−1)a}[n].
    for (n, a, b) in [(vec![0, 1], rat(1, 2), int(0)), (vec![1, 1], rat(1, 2), rat(1, 2)), (vec![1, 2], int(1), int(0))] {
        let n = ExpVector(n);
        for p in 2..=3i64 {
            let ctx = QContext::new(std_omega(&int(1)), vec![1, 1], root_order(1, &[&a, &b]), trunc)?;
            let whole = q_ordered_product(&ctx, &[QDilogFactor::new(n.clone(), a.clone(), b.clone())])?;
            let parts: Vec<QDilogFactor> = (1..=p)
                .map(|t| QDilogFactor::new(n.clone(), &a * int(p), &b + int(2 * t - p - 1) * &a))
                .collect();
            let name = format!("fission-fusion p = {p} for Ψ_{{{a},{b}}}[{n}]");
            expect_group_equal(&name, &whole, &q_ordered_product(&ctx, &parts)?)?;
            report.checks.push(name);
        }
    }
    Ok(report)
}

/// `Π_s Ψ_{q_{k_s}}(Y^{c⁺(s)})^{ε_s} = 1`, later factors on the left.
pub fn verify_qdi_tropical(run: &PatternRun, trunc: i64) -> Result<QReport, QuantumError> {
    run.detect_period().ok_or(QuantumError::NotPeriodic)?;
    let ctx = QContext::from_decomposition(&run.word.decomposition, trunc)?;
    let one = QLaurentElement::one(&ctx);
    let mut prod = one.clone();
    for (s, &k) in run.word.dirs.iter().enumerate() {
        let y = QLaurentElement::monomial(&ctx, run.c_plus[s].clone(), QCoeff::one());
        prod = psi_q_power(&y, ctx.qk_exponent(k), run.eps[s])?.mul(&prod)?;
    }
    expect_equal("tropical quantum dilogarithm identity", &prod, &one)?;
    let mut report = QReport::new("tropical quantum dilogarithm identity", trunc);
    report.checks.push(format!("{} factors multiply to 1", run.len()));
    Ok(report)
}

/// `Π_s Ψ_{q_{k_s}}(Ỹ_{k_s}(s)^{ε_s})^{ε_s} = 1`, later factors on the right,
/// with every partial product checked against the tropical partial product
/// it shuffles to.
pub fn verify_qdi_universal(run: &PatternRun, trunc: i64) -> Result<QReport, QuantumError> {
    run.detect_period().ok_or(QuantumError::NotPeriodic)?;
    let states = quantum_run(run, trunc)?;
    let ctx = states[0].context().clone();
    let one = QLaurentElement::one(&ctx);
    let (mut trop, mut univ) = (one.clone(), one.clone());
    for (s, &k) in run.word.dirs.iter().enumerate() {
        let eps = run.eps[s];
        let r = ctx.qk_exponent(k);
        let yt = &states[s].ys[k];
        let arg = if eps > 0 { yt.clone() } else { yt.inv_unit()? };
        if arg.shift() != &run.c_plus[s] {
            return Err(QuantumError::IdentityFails {
                identity: format!("tropical part of Ỹ at step {s}"),
                exponent: arg.shift().clone(),
                residual: format!("expected Y^{}", run.c_plus[s]),
            });
        }
        univ = univ.mul(&psi_q_power(&arg, r, eps)?)?;
        let y = QLaurentElement::monomial(&ctx, run.c_plus[s].clone(), QCoeff::one());
        trop = psi_q_power(&y, r, eps)?.mul(&trop)?;
        expect_equal(&format!("shuffle formula at step {s}"), &trop, &univ)?;
    }
    expect_equal("universal quantum dilogarithm identity", &univ, &one)?;
    let mut report = QReport::new("universal quantum dilogarithm identity", trunc);
    report.checks.push(format!("{} shuffled partial products agree", run.len()));
    report.checks.push(format!("{} factors multiply to 1", run.len()));
    Ok(report)
}

/// The two rank-2 affine loops with printed quantum wall data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcsdCase {
    /// `(δ₁, δ₂) = (2, 2)`.
    A1Affine,
    /// `(δ₁, δ₂) = (1, 4)`.
    A2Twisted,
}

impl QcsdCase {
    pub fn delta(self) -> (i64, i64) {
        match self {
            QcsdCase::A1Affine => (2, 2),
            QcsdCase::A2Twisted => (1, 4),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            QcsdCase::A1Affine => "a1affine",
            QcsdCase::A2Twisted => "a2twisted",
        }
    }
}

fn factor(n: [i32; 2], a: BigRational, b: BigRational) -> QDilogFactor {
    QDilogFactor::new(ExpVector(n.to_vec()), a, b)
}

/// The ordered side of the loop identity, all factors of degree `≤ ℓ`.
pub fn qcsd_ordered_side(case: QcsdCase, trunc: i64) -> Vec<QDilogFactor> {
    let keep = |n: &[i32; 2]| (n[0] + n[1]) as i64 <= trunc;
    let zero = BigRational::zero;
    let (mut left, mut center, mut right) = (Vec::new(), Vec::new(), Vec::new());
    match case {
        QcsdCase::A1Affine => {
            let h = rat(1, 2);
            for k in 0.. {
                let (l, r) = ([k + 1, k], [k, k + 1]);
                if !keep(&l) {
                    break;
                }
                left.push(factor(l, h.clone(), zero()));
                right.push(factor(r, h.clone(), zero()));
            }
            for j in 0.. {
                let p = 1i32 << j;
                if !keep(&[p, p]) {
                    break;
                }
                let s = rat(1 << j, 2);
                center.push(factor([p, p], s.clone(), -s.clone()));
                center.push(factor([p, p], s.clone(), s));
            }
        }
        QcsdCase::A2Twisted => {
            let quarter = rat(1, 4);
            for k in 0.. {
                let pair_l = [([2 * k + 1, 4 * k], int(1)), ([k + 1, 2 * k + 1], quarter.clone())];
                let pair_r = [([2 * k + 1, 4 * k + 4], int(1)), ([k, 2 * k + 1], quarter.clone())];
                if pair_l.iter().chain(&pair_r).all(|(n, _)| !keep(n)) {
                    break;
                }
                left.extend(pair_l.into_iter().filter(|(n, _)| keep(n)).map(|(n, a)| factor(n, a, zero())));
                right.extend(pair_r.into_iter().filter(|(n, _)| keep(n)).map(|(n, a)| factor(n, a, zero())));
            }
            if keep(&[1, 2]) {
                center.push(factor([1, 2], rat(1, 2), zero()));
            }
            for j in 0.. {
                let p = 1i32 << j;
                if !keep(&[p, 2 * p]) {
                    break;
                }
                let s = rat(1 << j, 2);
                center.push(factor([p, 2 * p], s.clone(), -s.clone()));
                center.push(factor([p, 2 * p], s.clone(), s));
            }
        }
    }
    // The right chain was generated from the outside in.
    right.reverse();
    left.into_iter().chain(center).chain(right).collect()
}

/// `[e₂]_{1/δ₂}[e₁]_{1/δ₁}` against the printed ordered side, to degree `ℓ`.
pub fn qcsd_wall_identity(case: QcsdCase, trunc: i64) -> Result<QReport, QuantumError> {
    let (d1, d2) = case.delta();
    let ctx = QContext::new(std_omega(&int(1)), vec![d1, d2], d1.lcm(&d2), trunc)?;
    let lhs = [factor([0, 1], rat(1, d2), BigRational::zero()), factor([1, 0], rat(1, d1), BigRational::zero())];
    let rhs = qcsd_ordered_side(case, trunc);
    let name = format!("quantum loop identity for δ = ({d1}, {d2})");
    expect_group_equal(&name, &q_ordered_product(&ctx, &lhs)?, &q_ordered_product(&ctx, &rhs)?)?;
    let mut report = QReport::new(&name, trunc);
    report.checks.push(format!("anti-ordered side equals {} ordered factors", rhs.len()));
    Ok(report)
}

/// Objects whose `q → 1` limit is compared with classical data.
#[derive(Clone, Copy, Debug)]
pub enum LimitTarget<'a> {
    /// A quantum ordering `[e₂]_{1/δ₂}[e₁]_{1/δ₁} = rhs` against the classical diagram.
    Ordering { delta: (i64, i64), rhs: &'a [QDilogFactor] },
    /// Quantum mutations along a run against the classical separation formula.
    Run(&'a PatternRun),
    /// Log-coefficients `(−1)^{j+1}q^{jb}/(j[ja]_q)` against `(−1)^{j+1}/(j²a)`.
    LogCoefficients { factor: &'a QDilogFactor, terms: u32 },
}

pub fn classical_limit_check(target: LimitTarget<'_>, trunc: i64) -> Result<QReport, QuantumError> {
    match target {
        LimitTarget::Ordering { delta, rhs } => limit_ordering(delta, rhs, trunc),
        LimitTarget::Run(run) => limit_run(run, trunc),
        LimitTarget::LogCoefficients { factor, terms } => limit_log_coefficients(factor, terms),
    }
}

fn limit_log_coefficients(f: &QDilogFactor, terms: u32) -> Result<QReport, QuantumError> {
    let d = root_order(1, &[&f.a, &f.b]);
    let ctx = QContext::new(vec![vec![BigRational::zero(); f.n.dim()]; f.n.dim()], vec![1; f.n.dim()], d, 0)?;
    for j in 1..=terms {
        let got = f.log_coefficient(j, &ctx)?.eval_at_one();
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let want = int(sign) / (int(j as i64 * j as i64) * &f.a);
        if got.as_ref() != Some(&want) {
            return Err(QuantumError::LimitMismatch(format!("log-coefficient {j} of Ψ_{{{},{}}}: {got:?} ≠ {want}", f.a, f.b)));
        }
    }
    let mut report = QReport::new("classical limit of log-coefficients", terms as i64);
    report.checks.push(format!("{terms} coefficients reduce to (−1)^(j+1)/(j²a)"));
    Ok(report)
}

/// Merges adjacent factors on the same vector into classical `Ψ[n]^{Σ 1/a}`.
fn classical_factors(fs: &[QDilogFactor]) -> Vec<(ExpVector, BigRational)> {
    let mut out: Vec<(ExpVector, BigRational)> = Vec::new();
    for f in fs {
        match out.last_mut() {
            Some((n, c)) if *n == f.n => *c += f.classical_exponent(),
            _ => out.push((f.n.clone(), f.classical_exponent())),
        }
    }
    out
}

fn classical_images(g: &GroupElement, ctx: &Arc<QContext>) -> Vec<QLaurentElement> {
    (0..ctx.rank())
        .map(|i| {
            let e = ExpVector::unit(ctx.rank(), i);
            let terms: BTreeMap<ExpVector, QCoeff> = g.unit(i).terms().map(|(m, c)| (&e + m, QCoeff::from_rational(c.clone()))).collect();
            QLaurentElement::from_parts(ctx, e, ctx.trunc(), terms)
        })
        .collect()
}

fn limit_ordering(delta: (i64, i64), rhs: &[QDilogFactor], trunc: i64) -> Result<QReport, QuantumError> {
    let (d1, d2) = delta;
    let ctx = QContext::new(std_omega(&int(1)), vec![d1, d2], root_order(d1.lcm(&d2), &rhs.iter().flat_map(|f| [&f.a, &f.b]).collect::<Vec<_>>()), trunc)?;
    let lhs = [factor([0, 1], rat(1, d2), BigRational::zero()), factor([1, 0], rat(1, d1), BigRational::zero())];
    let quantum = q_ordered_product(&ctx, rhs)?;
    expect_group_equal("quantum ordering", &q_ordered_product(&ctx, &lhs)?, &quantum)?;
    let mut report = QReport::new(&format!("classical limit of the quantum ordering for δ = ({d1}, {d2})"), trunc);
    report.checks.push("quantum ordering holds".into());
    // Factor by factor: [n]_{a,b} ↦ Ψ[n]^{1/a}.
    let diagram = build_rank2_csd(delta, trunc)?;
    let classical: Vec<(ExpVector, BigRational)> =
        diagram.factors().filter(|f| f.n.degree() <= trunc).map(|f| (f.n.clone(), f.exponent.clone())).collect();
    let limit: Vec<(ExpVector, BigRational)> = classical_factors(rhs).into_iter().filter(|(n, _)| n.degree() <= trunc).collect();
    if limit != classical {
        return Err(QuantumError::LimitMismatch(format!("factors {limit:?} ≠ classical {classical:?}")));
    }
    report.checks.push(format!("{} factors map to the classical wall exponents", limit.len()));
    // Coefficientwise: generator images at q = 1 against the classical action.
    let comm = QContext::commutative(2, trunc);
    let images = quantum.specialize_at_one()?;
    let g = ordered_product(diagram.context(), &diagram.walls.iter().map(|w| cdl_scatter::RayFactors { normal: w.normal.clone(), factors: w.factors.clone() }).collect::<Vec<_>>());
    for (i, (x, y)) in images.iter().zip(classical_images(&g, &comm)).enumerate() {
        expect_equal(&format!("q = 1 image of Y{}", i + 1), x, &y)?;
    }
    report.checks.push("generator images agree coefficientwise at q = 1".into());
    Ok(report)
}

fn poly_element(ctx: &Arc<QContext>, p: &MultiPoly) -> QLaurentElement {
    let terms = p.terms().map(|(m, c)| (m.clone(), QCoeff::from_rational(c.clone()))).collect();
    QLaurentElement::from_parts(ctx, p.min_exponents(), i64::MAX / 4, terms)
}

fn limit_run(run: &PatternRun, trunc: i64) -> Result<QReport, QuantumError> {
    let states = quantum_run(run, trunc)?;
    let comm = QContext::commutative(run.rank(), trunc);
    for (s, st) in states.iter().enumerate() {
        for (i, y) in st.ys.iter().enumerate() {
            let (num, den) = run.separation_y(s, i).expand();
            let lhs = y.specialize_at_one(&comm)?.mul(&poly_element(&comm, &den))?;
            expect_equal(&format!("q = 1 limit of Y{}({s})", i + 1), &lhs, &poly_element(&comm, &num))?;
        }
    }
    let mut report = QReport::new("classical limit of quantum mutations", trunc);
    report.checks.push(format!("{} steps reduce to the separation formula", run.len()));
    Ok(report)
}
