//! Simple reflections, bipartite Coxeter elements and the root orbits they generate.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use cdl_seed::{DynkinType, IntMatrix};

use crate::YSystemError;

/// A vector in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootVector {
    pub coords: Vec<i64>,
}

impl RootVector {
    pub fn simple(r: usize, a: usize) -> Self {
        let mut coords = vec![0; r];
        coords[a] = 1;
        RootVector { coords }
    }

    pub fn zero(r: usize) -> Self {
        RootVector { coords: vec![0; r] }
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0) && self.coords.iter().any(|&c| c > 0)
    }
}

impl Add for &RootVector {
    type Output = RootVector;
    fn add(self, o: &RootVector) -> RootVector {
        RootVector { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &RootVector {
    type Output = RootVector;
    fn sub(self, o: &RootVector) -> RootVector {
        RootVector { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &RootVector {
    type Output = RootVector;
    fn neg(self) -> RootVector {
        RootVector { coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Bipartite signs `κ` on the vertices of a tree diagram with `κ_1 = first`.
pub fn bipartite_signs(x: &DynkinType, first: i64) -> Vec<i64> {
    let r = x.rank;
    let mut kappa = vec![0i64; r];
    kappa[0] = first;
    let mut stack = vec![0];
    while let Some(a) = stack.pop() {
        for b in x.neighbors(a) {
            if kappa[b] == 0 {
                kappa[b] = -kappa[a];
                stack.push(b);
            }
        }
    }
    kappa
}

/// A simply-laced root system with a bipartite sign choice.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    pub x: DynkinType,
    pub kappa: Vec<i64>,
    cartan: IntMatrix,
}

impl CoxeterSystem {
    pub fn new(x: &DynkinType, first: i64) -> Result<Self, YSystemError> {
        if !x.is_simply_laced() {
            return Err(YSystemError::NotSimplyLaced(x.name()));
        }
        Ok(CoxeterSystem { x: x.clone(), kappa: bipartite_signs(x, first), cartan: x.cartan() })
    }

    pub fn rank(&self) -> usize {
        self.x.rank
    }

    /// `s_a(v) = v − (α_a, v) α_a`.
    pub fn reflect(&self, a: usize, v: &RootVector) -> RootVector {
        let pairing: i64 = self.cartan[a].iter().zip(&v.coords).map(|(x, y)| x * y).sum();
        let mut out = v.clone();
        out.coords[a] -= pairing;
        out
    }

    /// The product of the (commuting) simple reflections with `κ_a = sign`.
    pub fn s_sign(&self, sign: i64, v: &RootVector) -> RootVector {
        (0..self.rank()).filter(|&a| self.kappa[a] == sign).fold(v.clone(), |w, a| self.reflect(a, &w))
    }

    /// `α(a;k)` for `0 ≤ k ≤ h`, applying `s_∓` alternately starting with the sign opposite to `κ_a`.
    pub fn orbit_by_reflections(&self, a: usize) -> Vec<RootVector> {
        let r = self.rank();
        let mut out = vec![-&RootVector::simple(r, a), RootVector::simple(r, a)];
        for k in 1..=self.x.coxeter_number {
            let sign = if k % 2 == 1 { -self.kappa[a] } else { self.kappa[a] };
            let next = self.s_sign(sign, out.last().unwrap());
            out.push(next);
        }
        out
    }

    /// `α(a;k)` for all vertices from `α(a;k+1) + α(a;k−1) = Σ_{b∼a} α(b;k)`.
    pub fn orbits_by_recursion(&self) -> Vec<Vec<RootVector>> {
        let r = self.rank();
        let mut out: Vec<Vec<RootVector>> =
            (0..r).map(|a| vec![-&RootVector::simple(r, a), RootVector::simple(r, a)]).collect();
        for k in 0..self.x.coxeter_number {
            let next: Vec<RootVector> = (0..r)
                .map(|a| {
                    let sum = self.x.neighbors(a).iter().fold(RootVector::zero(r), |acc, &b| &acc + &out[b][k + 1]);
                    &sum - &out[a][k]
                })
                .collect();
            for (a, v) in next.into_iter().enumerate() {
                out[a].push(v);
            }
        }
        out
    }

    /// Matrix of a product of sign reflections applied right to left, `signs[0]` last.
    fn product_matrix(&self, signs: &[i64]) -> Vec<RootVector> {
        let r = self.rank();
        (0..r)
            .map(|a| signs.iter().rev().fold(RootVector::simple(r, a), |v, &s| self.s_sign(s, &v)))
            .collect()
    }
}

/// `α(a;−1), α(a;0), …, α(a;h)` for vertex `a` (0-indexed), computed by both routes.
pub fn coxeter_orbit(x: &DynkinType, a: usize, kappa_first: i64) -> Result<Vec<RootVector>, YSystemError> {
    let sys = CoxeterSystem::new(x, kappa_first)?;
    let by_reflection = sys.orbit_by_reflections(a);
    let by_recursion = &sys.orbits_by_recursion()[a];
    for (k, (u, v)) in by_reflection.iter().zip(by_recursion).enumerate() {
        if u != v {
            return Err(YSystemError::RouteMismatch { a, k: k as i64 - 1 });
        }
    }
    let h = x.coxeter_number;
    let end = RootVector::simple(x.rank, x.omega[a]);
    if by_reflection[h] != end || by_reflection[h + 1] != -&end {
        return Err(YSystemError::OrbitEndpoint { a });
    }
    Ok(by_reflection)
}

/// Checks `(s₋s₊)^{h/2} = (s₊s₋)^{h/2} = w₀` with `w₀(α_a) = −α_{ω(a)}`.
pub fn longest_element_check(x: &DynkinType) -> Result<(), YSystemError> {
    let sys = CoxeterSystem::new(x, 1)?;
    let h = x.coxeter_number;
    let alternating = |first: i64| -> Vec<i64> { (0..h).map(|i| if i % 2 == 0 { first } else { -first }).collect() };
    let w1 = sys.product_matrix(&alternating(1));
    let w2 = sys.product_matrix(&alternating(-1));
    if w1 != w2 {
        return Err(YSystemError::LongestElement(x.name()));
    }
    for (a, img) in w1.iter().enumerate() {
        if *img != -&RootVector::simple(x.rank, x.omega[a]) {
            return Err(YSystemError::LongestElement(x.name()));
        }
    }
    Ok(())
}
