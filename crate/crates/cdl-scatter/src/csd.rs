//! Rank-2 cluster scattering diagrams, path-ordered products and the
//! formal dilogarithm identity of a loop.

use std::sync::Arc;

use cdl_algebra::{BigRational, ExpVector};
use num_traits::One;
use serde_json::{json, Value};

use crate::factor::{group_log_factorize, is_positive_integer, DilogFactor, RayFactors, SlopeOrder};
use crate::group::{GroupContext, GroupElement};
use crate::series::{rat_i, Series};
use crate::ScatterError;

/// A wall: its support (a ray, or a full line for the two incoming walls),
/// its primitive normal and the dilogarithm factors attached to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    /// Primitive direction of the support in the plane.
    pub ray: [i64; 2],
    pub full_line: bool,
    pub normal: ExpVector,
    pub factors: Vec<DilogFactor>,
}

impl Wall {
    /// Whether the nonzero point `z` lies on the support.
    pub fn contains(&self, z: [i64; 2]) -> bool {
        let cross = self.ray[0] * z[1] - self.ray[1] * z[0];
        cross == 0 && (self.full_line || self.ray[0] * z[0] + self.ray[1] * z[1] > 0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ray": self.ray,
            "full_line": self.full_line,
            "normal": self.normal.0,
            "factors": self.factors.iter().map(DilogFactor::to_json).collect::<Vec<_>>(),
        })
    }
}

/// A rank-2 diagram reduced at degree `ℓ`, walls sorted by decreasing
/// slope `n₁/n₂` of their normals.
#[derive(Clone, Debug)]
pub struct Rank2Diagram {
    pub delta: (i64, i64),
    pub trunc: i64,
    pub walls: Vec<Wall>,
    ctx: Arc<GroupContext>,
}

/// One crossing of a path: a point on a support and the intersection sign.
pub type Crossing = ([i64; 2], i32);

impl Rank2Diagram {
    pub fn context(&self) -> &Arc<GroupContext> {
        &self.ctx
    }

    /// The support direction `−B·n` for a normal `n`, made primitive.
    pub fn support_of(delta: (i64, i64), n: &ExpVector) -> [i64; 2] {
        let v = [delta.0 * n.0[1] as i64, -delta.1 * n.0[0] as i64];
        let g = num_integer::gcd(v[0], v[1]).max(1);
        [v[0] / g, v[1] / g]
    }

    /// All wall factors from left to right.
    pub fn factors(&self) -> impl Iterator<Item = &DilogFactor> {
        self.walls.iter().flat_map(|w| w.factors.iter())
    }

    /// Every exponent is a positive integer multiple of `δ(h·n)`.
    pub fn is_positive_realization(&self) -> bool {
        let d = [self.delta.0, self.delta.1];
        self.factors().all(|f| is_positive_integer(&f.multiplicity(&d)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "delta": [self.delta.0, self.delta.1],
            "degree": self.trunc,
            "walls": self.walls.iter().map(Wall::to_json).collect::<Vec<_>>(),
        })
    }
}

/// The consistent diagram with incoming walls `Ψ[e₁]^{δ₁}` and `Ψ[e₂]^{δ₂}`,
/// reduced at degree `ℓ`.
pub fn build_rank2_csd(delta: (i64, i64), trunc: i64) -> Result<Rank2Diagram, ScatterError> {
    if delta.0 < 1 || delta.1 < 1 || trunc < 1 {
        return Err(ScatterError::BadDelta(vec![delta.0, delta.1]));
    }
    let ctx = GroupContext::rank2(trunc);
    let e1 = ExpVector::unit(2, 0);
    let e2 = ExpVector::unit(2, 1);
    let g = GroupElement::identity(&ctx)
        .left_mul_psi(&e1, &rat_i(delta.0))
        .left_mul_psi(&e2, &rat_i(delta.1));
    let rays = group_log_factorize(&g, SlopeOrder::Decreasing)?;
    let walls = rays
        .into_iter()
        .map(|RayFactors { normal, factors }| {
            let full_line = normal == e1 || normal == e2;
            Wall { ray: Rank2Diagram::support_of(delta, &normal), full_line, normal, factors }
        })
        .collect();
    Ok(Rank2Diagram { delta, trunc, walls, ctx })
}

/// `Π θ_a^{ε_a}` with later crossings on the left.
pub fn path_ordered_product(d: &Rank2Diagram, crossings: &[Crossing]) -> Result<GroupElement, ScatterError> {
    let mut g = GroupElement::identity(&d.ctx);
    for &(z, sign) in crossings {
        for f in crossing_factors(d, z)? {
            g = g.left_mul_psi(&f.n, &(&f.exponent * rat_i(sign as i64)));
        }
    }
    Ok(g)
}

fn crossing_factors(d: &Rank2Diagram, z: [i64; 2]) -> Result<Vec<&DilogFactor>, ScatterError> {
    if z == [0, 0] {
        return Err(ScatterError::BadVector(ExpVector(vec![0, 0])));
    }
    Ok(d.walls.iter().filter(|w| w.contains(z)).flat_map(|w| w.factors.iter()).collect())
}

/// The counterclockwise loop based at the diagonal of the positive quadrant,
/// crossing every support ray once with its intersection sign.
pub fn ccw_loop(d: &Rank2Diagram) -> Vec<Crossing> {
    let mut stops: Vec<([i64; 2], ExpVector)> = Vec::new();
    for w in &d.walls {
        stops.push((w.ray, w.normal.clone()));
        if w.full_line {
            stops.push(([-w.ray[0], -w.ray[1]], w.normal.clone()));
        }
    }
    let base = std::f64::consts::FRAC_PI_4;
    let angle = |z: [i64; 2]| {
        let a = (z[1] as f64).atan2(z[0] as f64);
        (a - base).rem_euclid(2.0 * std::f64::consts::PI)
    };
    stops.sort_by(|a, b| angle(a.0).total_cmp(&angle(b.0)));
    stops
        .into_iter()
        .map(|(z, n)| {
            // Counterclockwise tangent at z; the sign is +1 when it runs against the normal.
            let t = [-z[1], z[0]];
            let pair = n.0[0] as i64 * t[0] + n.0[1] as i64 * t[1];
            (z, if pair < 0 { 1 } else { -1 })
        })
        .collect()
}

/// A formal sum `f + Σ log(yᵢ)·gᵢ` of truncated series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSeries {
    pub base: Series,
    pub log_parts: Vec<Series>,
}

impl LogSeries {
    pub fn zero(nvars: usize, trunc: i64) -> Self {
        LogSeries { base: Series::zero(nvars, trunc), log_parts: vec![Series::zero(nvars, trunc); nvars] }
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.log_parts.iter().all(Series::is_zero)
    }

    /// Adds `w·L̃(y^m·U)` for a unit series `U`.
    pub fn add_rogers(&mut self, w: &BigRational, m: &ExpVector, unit: &Series) {
        let trunc = self.base.trunc();
        let x = unit.shift(m).truncate(trunc);
        let li = x.compose_univariate(|j| sign(j) / rat_i(j * j));
        let log1p = x.compose_univariate(|j| sign(j) / rat_i(j));
        let half = BigRational::new(1.into(), 2.into());
        let log_unit = unit.truncate(trunc).unit_log();
        self.base.add_assign(&li.sub(&log_unit.mul(&log1p).scale(&half)).scale(w));
        for (i, part) in self.log_parts.iter_mut().enumerate() {
            if m.0[i] != 0 {
                part.add_assign(&log1p.scale(&(-(w * rat_i(m.0[i] as i64)) * &half)));
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "base": self.base.to_json(),
            "log_parts": self.log_parts.iter().map(Series::to_json).collect::<Vec<_>>(),
        })
    }
}

fn sign(j: i64) -> BigRational {
    if j % 2 == 1 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `Σ_a ε_a·s_a·δ(h_a n_a)·L̃(y_{z_a}[h_a n_a])` along a loop based in the
/// positive quadrant, where `y_z[m]` is `y^m` transported from `z` back to
/// the base point. Fails unless the sum vanishes to degree `ℓ`.
pub fn loop_di_formal(d: &Rank2Diagram, crossings: &[Crossing]) -> Result<LogSeries, ScatterError> {
    let ctx = &d.ctx;
    let mut out = LogSeries::zero(2, d.trunc);
    // back = θ₀⁻¹⋯θ_{a−1}⁻¹, the product along the path from z_a to the base.
    let mut back = GroupElement::identity(ctx);
    for &(z, eps) in crossings {
        let factors = crossing_factors(d, z)?;
        for f in &factors {
            let w = &f.exponent * rat_i(eps as i64);
            out.add_rogers(&w, &f.n, &back.monomial_unit(&f.n.0));
        }
        for f in &factors {
            back = back.right_mul_psi(&f.n, &-(&f.exponent * rat_i(eps as i64)));
        }
    }
    if out.is_zero() {
        Ok(out)
    } else {
        let mut terms: Vec<String> = out.base.terms().take(4).map(|(e, c)| format!("{c}·y^{e}")).collect();
        for (i, p) in out.log_parts.iter().enumerate() {
            terms.extend(p.terms().take(2).map(|(e, c)| format!("{c}·log(y{})·y^{e}", i + 1)));
        }
        Err(ScatterError::NonZeroResidual { terms: terms.join(", ") })
    }
}
