//! The G-fan of a rank-2 pattern against the supports of its diagram.

use cdl_pattern::{run_tropical, MutationWord, PatternRun};
use cdl_seed::ExchangeMatrix;
use serde_json::{json, Value};

use crate::csd::Rank2Diagram;
use crate::ScatterError;

/// Ray sets of the G-fan and of the diagram.
#[derive(Clone, Debug)]
pub struct GFanReport {
    /// Rays spanned by g-vectors seen in the runs.
    pub g_rays: Vec<[i64; 2]>,
    /// Rays of the diagram's supports (both halves of the incoming lines).
    pub wall_rays: Vec<[i64; 2]>,
    /// G-rays lying on no wall support.
    pub off_wall: Vec<[i64; 2]>,
    /// Wall rays not reached by any g-vector.
    pub uncovered: Vec<[i64; 2]>,
    /// `δ₁δ₂ ≤ 3`, where the G-fan is complete.
    pub finite_type: bool,
}

impl GFanReport {
    /// Inclusion always; equality in finite type.
    pub fn holds(&self) -> bool {
        self.off_wall.is_empty() && (!self.finite_type || self.uncovered.is_empty())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "g_rays": self.g_rays,
            "wall_rays": self.wall_rays,
            "off_wall": self.off_wall,
            "uncovered": self.uncovered,
            "finite_type": self.finite_type,
            "holds": self.holds(),
        })
    }
}

/// Tropical runs of both alternating words of length `len` for `[[0, −δ₁], [δ₂, 0]]`.
pub fn rank2_runs(delta: (i64, i64), len: usize) -> Result<Vec<PatternRun>, ScatterError> {
    let b = ExchangeMatrix::rank2(delta.0, delta.1);
    (0..2)
        .map(|start| {
            let dirs = (0..len).map(|s| (start + s) % 2).collect();
            Ok(run_tropical(&MutationWord::new(b.clone(), dirs)?)?)
        })
        .collect()
}

fn primitive(v: [i64; 2]) -> [i64; 2] {
    let g = num_integer::gcd(v[0], v[1]).max(1);
    [v[0] / g, v[1] / g]
}

/// Compares the rays of all g-vectors in `runs` with the supports of `d`.
///
/// Only G-rays whose would-be wall normal has degree at most `ℓ` are tested,
/// since the reduced diagram carries nothing beyond that.
pub fn g_fan_embedding_check(d: &Rank2Diagram, runs: &[PatternRun]) -> GFanReport {
    let mut g_rays: Vec<[i64; 2]> = Vec::new();
    for run in runs {
        for st in &run.steps {
            for j in 0..2 {
                let r = primitive([st.g[0][j], st.g[1][j]]);
                if !g_rays.contains(&r) {
                    g_rays.push(r);
                }
            }
        }
    }
    let mut wall_rays = Vec::new();
    for w in &d.walls {
        wall_rays.push(w.ray);
        if w.full_line {
            wall_rays.push([-w.ray[0], -w.ray[1]]);
        }
    }
    let (d1, d2) = d.delta;
    let in_range = |r: &[i64; 2]| {
        if r[0] == 0 || r[1] == 0 {
            return true;
        }
        // The normal n with −B·n ∥ r is ∝ (−r₂δ₁, r₁δ₂).
        let n = primitive([-r[1] * d1, r[0] * d2]);
        n[0] < 0 || n[1] < 0 || n[0] + n[1] <= d.trunc
    };
    let off_wall = g_rays.iter().filter(|r| in_range(r) && !wall_rays.contains(r)).copied().collect();
    let uncovered = wall_rays.iter().filter(|r| !g_rays.contains(r)).copied().collect();
    g_rays.sort();
    wall_rays.sort();
    GFanReport { g_rays, wall_rays, off_wall, uncovered, finite_type: d1 * d2 <= 3 }
}
