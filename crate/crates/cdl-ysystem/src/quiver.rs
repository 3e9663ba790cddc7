//! The product quiver `Q(X, X′)` and its bipartite mutation word.

use cdl_pattern::MutationWord;
use cdl_seed::{DynkinType, ExchangeMatrix, Permutation, Quiver};
use serde_json::{json, Value};

use crate::{bipartite_signs, YSystemError};

/// The quiver on `I × I′` with vertex `(a, a′)` at index `a′·r + a` (0-indexed).
///
/// Horizontal arrows run from `V₋` to `V₊` and vertical arrows from `V₊` to `V₋`,
/// where `V_±` collects the vertices with `κ_a κ′_{a′} = ±1`.
#[derive(Clone, Debug)]
pub struct BipartiteQuiver {
    pub x: DynkinType,
    pub xp: DynkinType,
    pub kappa_x: Vec<i64>,
    pub kappa_xp: Vec<i64>,
    pub quiver: Quiver,
    pub v_plus: Vec<usize>,
    pub v_minus: Vec<usize>,
}

impl BipartiteQuiver {
    /// Sign `+` at vertex 1 of both diagrams.
    pub fn new(x: &DynkinType, xp: &DynkinType) -> Result<Self, YSystemError> {
        Self::with_signs(x, xp, 1, 1)
    }

    /// Explicit signs at vertex 1 of `X` and of `X′`.
    pub fn with_signs(x: &DynkinType, xp: &DynkinType, first_x: i64, first_xp: i64) -> Result<Self, YSystemError> {
        for d in [x, xp] {
            if !d.is_simply_laced() {
                return Err(YSystemError::NotSimplyLaced(d.name()));
            }
        }
        let (kx, kxp) = (bipartite_signs(x, first_x), bipartite_signs(xp, first_xp));
        let (r, rp) = (x.rank, xp.rank);
        let idx = |a: usize, ap: usize| ap * r + a;
        let kappa = |v: usize| kx[v % r] * kxp[v / r];
        let mut arrows = Vec::new();
        for ap in 0..rp {
            for (a, b) in x.edges() {
                let (u, v) = (idx(a, ap), idx(b, ap));
                arrows.push(if kappa(u) < 0 { (u, v, 1) } else { (v, u, 1) });
            }
        }
        for a in 0..r {
            for (ap, bp) in xp.edges() {
                let (u, v) = (idx(a, ap), idx(a, bp));
                arrows.push(if kappa(u) > 0 { (u, v, 1) } else { (v, u, 1) });
            }
        }
        let quiver = Quiver::new(r * rp, &arrows)?;
        let (v_plus, v_minus) = (0..r * rp).partition(|&v| kappa(v) > 0);
        Ok(BipartiteQuiver { x: x.clone(), xp: xp.clone(), kappa_x: kx, kappa_xp: kxp, quiver, v_plus, v_minus })
    }

    pub fn size(&self) -> usize {
        self.x.rank * self.xp.rank
    }

    pub fn vertex(&self, a: usize, ap: usize) -> usize {
        ap * self.x.rank + a
    }

    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v % self.x.rank, v / self.x.rank)
    }

    pub fn kappa(&self, v: usize) -> i64 {
        let (a, ap) = self.coords(v);
        self.kappa_x[a] * self.kappa_xp[ap]
    }

    pub fn exchange_matrix(&self) -> ExchangeMatrix {
        self.quiver.to_matrix()
    }

    /// The vertex permutation `(a, a′) ↦ (ω(a), ω′(a′))`.
    pub fn omega_pair(&self) -> Permutation {
        let images = (0..self.size())
            .map(|v| {
                let (a, ap) = self.coords(v);
                self.vertex(self.x.omega[a], self.xp.omega[ap])
            })
            .collect();
        Permutation::new(images).expect("ω is a bijection")
    }

    /// Whether `u, v` differ by an edge of `X` in the same row.
    pub fn horizontal(&self, u: usize, v: usize) -> bool {
        let ((a, ap), (b, bp)) = (self.coords(u), self.coords(v));
        ap == bp && self.x.adjacent(a, b)
    }

    /// Whether `u, v` differ by an edge of `X′` in the same column.
    pub fn vertical(&self, u: usize, v: usize) -> bool {
        let ((a, ap), (b, bp)) = (self.coords(u), self.coords(v));
        a == b && self.xp.adjacent(ap, bp)
    }

    /// Start index in the flat word of composite step `s`.
    pub fn offset(&self, s: usize) -> usize {
        s.div_ceil(2) * self.v_plus.len() + (s / 2) * self.v_minus.len()
    }

    /// Checks that each composite mutation is order-independent and reverses the quiver.
    pub fn check_composites(&self) -> Result<(), YSystemError> {
        fn apply<'a>(q: &Quiver, mut vs: impl Iterator<Item = &'a usize>) -> Result<Quiver, YSystemError> {
            vs.try_fold(q.clone(), |q, &v| q.mutate(v).map_err(YSystemError::from))
        }
        let mut q = self.quiver.clone();
        for part in [&self.v_plus, &self.v_minus] {
            let forward = apply(&q, part.iter())?;
            let backward = apply(&q, part.iter().rev())?;
            let internal = part.iter().any(|&u| part.iter().any(|&v| q.arrows().contains_key(&(u, v))));
            if internal || forward != backward || forward != q.opposite() {
                return Err(YSystemError::QuiverShape);
            }
            q = forward;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "X": self.x.name(),
            "Xp": self.xp.name(),
            "kappa_x": self.kappa_x,
            "kappa_xp": self.kappa_xp,
            "quiver": self.quiver.to_json(),
            "v_plus": self.v_plus.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "v_minus": self.v_minus.iter().map(|v| v + 1).collect::<Vec<_>>(),
        })
    }
}

/// The word `(V₊)(V₋)(V₊)…` of `composite_steps` composite mutations, each part in index order.
pub fn build_bipartite_word(q: &BipartiteQuiver, composite_steps: usize) -> Result<MutationWord, YSystemError> {
    q.check_composites()?;
    let mut dirs = Vec::new();
    for s in 0..composite_steps {
        dirs.extend(if s % 2 == 0 { &q.v_plus } else { &q.v_minus });
    }
    Ok(MutationWord::new(q.exchange_matrix(), dirs)?)
}
