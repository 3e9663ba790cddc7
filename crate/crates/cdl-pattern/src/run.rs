use cdl_algebra::{ExpVector, FactoredSF, MultiPoly};
use cdl_seed::{det, identity, mat_mul, transpose, ExchangeMatrix, Permutation, SeedError, SkewDecomposition};
use num_integer::Integer;
use serde_json::{json, Value};

use crate::state::{column, MutateError, SeedState};
use crate::PatternError;

/// An exchange matrix with its decomposition and a sequence of directions.
#[derive(Clone, Debug)]
pub struct MutationWord {
    pub matrix: ExchangeMatrix,
    pub decomposition: SkewDecomposition,
    pub dirs: Vec<usize>,
}

impl MutationWord {
    /// Uses the minimal symmetrizer. Directions are 0-indexed.
    pub fn new(matrix: ExchangeMatrix, dirs: Vec<usize>) -> Result<Self, PatternError> {
        let decomposition = matrix.decompose();
        Self::with_decomposition(matrix, decomposition, dirs)
    }

    pub fn with_decomposition(
        matrix: ExchangeMatrix,
        decomposition: SkewDecomposition,
        dirs: Vec<usize>,
    ) -> Result<Self, PatternError> {
        let n = matrix.rank();
        if let Some(&k) = dirs.iter().find(|&&k| k >= n) {
            return Err(SeedError::BadDirection { k, n }.into());
        }
        Ok(MutationWord { matrix, decomposition, dirs })
    }

    /// The word `k₀ k₁ k₀ k₁ …` of the given length on a rank-2 matrix, starting at direction 0.
    pub fn alternating(matrix: ExchangeMatrix, len: usize) -> Result<Self, PatternError> {
        Self::new(matrix, (0..len).map(|s| s % 2).collect())
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn delta(&self, k: usize) -> i64 {
        self.decomposition.delta[k]
    }
}

/// The certified trace of a mutation word.
#[derive(Clone, Debug)]
pub struct PatternRun {
    pub word: MutationWord,
    /// `steps[s]` for `s = 0..=P`.
    pub steps: Vec<SeedState>,
    /// Tropical sign `ε_s` for `s < P`.
    pub eps: Vec<i64>,
    /// `c⁺(s) = ε_s c_{k_s}(s)` for `s < P`.
    pub c_plus: Vec<ExpVector>,
}

/// Weighted counts of positive and negative tropical signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DIWeights {
    pub n_plus: i64,
    pub n_minus: i64,
}

fn run(word: &MutationWord, with_f: bool, budget: Option<usize>) -> Result<PatternRun, PatternError> {
    let b0 = &word.matrix;
    let mut steps = vec![SeedState::initial(b0, with_f)];
    let mut eps = Vec::with_capacity(word.len());
    let mut c_plus = Vec::with_capacity(word.len());
    for (s, &k) in word.dirs.iter().enumerate() {
        let cur = steps.last().unwrap();
        let (next, e) = cur.mutate(k, b0).map_err(|err| match err {
            MutateError::NotSignCoherent => PatternError::NotSignCoherent { step: s, k },
            MutateError::Seed(e) => e.into(),
            MutateError::Algebra(e) => e.into(),
        })?;
        c_plus.push(cur.c_vector(k).scale(e as i32));
        eps.push(e);
        if with_f {
            let fk = &next.f[k];
            if fk.constant_term() != cdl_algebra::int(1) || !fk.has_nonnegative_coefficients() {
                return Err(PatternError::InvariantViolation {
                    step: s + 1,
                    what: format!("F-polynomial {} = {fk}", k + 1),
                });
            }
            if let Some(max) = budget {
                let terms: usize = next.f.iter().map(|f| f.nterms()).sum();
                if terms > max {
                    return Err(PatternError::BudgetExceeded { step: s + 1, terms });
                }
            }
        }
        steps.push(next);
    }
    Ok(PatternRun { word: word.clone(), steps, eps, c_plus })
}

/// Runs the C/G/F recursions along the word.
pub fn run_pattern(word: &MutationWord) -> Result<PatternRun, PatternError> {
    run(word, true, None)
}

/// As [`run_pattern`], failing once the F-polynomials of a single seed exceed `max_terms` terms.
pub fn run_pattern_budgeted(word: &MutationWord, max_terms: usize) -> Result<PatternRun, PatternError> {
    run(word, true, Some(max_terms))
}

/// Runs only the B/C/G recursions.
pub fn run_tropical(word: &MutationWord) -> Result<PatternRun, PatternError> {
    run(word, false, None)
}

/// `N± = Σ_s δ_{k_s} (1 ± ε_s)/2`.
pub fn di_weights(run: &PatternRun) -> DIWeights {
    let mut w = DIWeights { n_plus: 0, n_minus: 0 };
    for (s, &k) in run.word.dirs.iter().enumerate() {
        if run.eps[s] > 0 {
            w.n_plus += run.word.delta(k);
        } else {
            w.n_minus += run.word.delta(k);
        }
    }
    w
}

impl PatternRun {
    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.word.matrix.rank()
    }

    pub fn has_f(&self) -> bool {
        self.rank() == 0 || !self.steps[0].f.is_empty()
    }

    pub fn step(&self, s: usize) -> &SeedState {
        &self.steps[s]
    }

    pub fn direction(&self, s: usize) -> usize {
        self.word.dirs[s]
    }

    pub fn f_poly(&self, s: usize, i: usize) -> &MultiPoly {
        &self.steps[s].f[i]
    }

    fn f_factored(&self, s: usize, i: usize) -> FactoredSF {
        FactoredSF::from_poly(&self.steps[s].f[i]).expect("F-polynomials are nonzero")
    }

    /// `y_i(s) = y^{c_i(s)} Π_j F_j(s)^{b_ji(s)}`.
    pub fn separation_y(&self, s: usize, i: usize) -> FactoredSF {
        assert!(self.has_f(), "separation formula needs F-polynomials");
        let st = &self.steps[s];
        let mut y = FactoredSF::from_monomial(st.c_vector(i));
        for j in 0..self.rank() {
            let e = st.b.get(j, i);
            if e != 0 {
                y = y.mul(&self.f_factored(s, j).pow(e as i32));
            }
        }
        y
    }

    /// `1 + y_k(s)` for the mutated direction `k = k_s`, in factored form:
    /// `y^{-[-c_k]₊} F_k(s+1) F_k(s) / Π_j F_j(s)^{[-b_jk(s)]₊}`.
    pub fn one_plus_y(&self, s: usize) -> FactoredSF {
        let k = self.direction(s);
        let st = &self.steps[s];
        let ck = st.c_vector(k);
        let mut v = FactoredSF::from_monomial(-&(-&ck).pos_part());
        v = v.mul(&self.f_factored(s + 1, k)).mul(&self.f_factored(s, k));
        for j in 0..self.rank() {
            let b = st.b.get(j, k);
            if b < 0 {
                v = v.div(&self.f_factored(s, j).pow(-b as i32));
            }
        }
        v
    }

    /// Tropical part `x^{g_i(s)}` and the polynomial `F_i(s)` to be evaluated at ŷ.
    pub fn separation_x(&self, s: usize, i: usize) -> (ExpVector, MultiPoly) {
        (self.steps[s].g_vector(i), self.steps[s].f[i].clone())
    }

    /// The tropical images `y^{c_i(s)}` of the y-variables at step `s`.
    pub fn fg_tropical_image(&self, s: usize) -> Vec<ExpVector> {
        (0..self.rank()).map(|i| self.steps[s].c_vector(i)).collect()
    }

    /// The permutation `ν` with final C-matrix columns `c_i(P) = e_{ν⁻¹(i)}`, if any.
    ///
    /// Cross-checks B, G and (when present) F against the same `ν`.
    pub fn detect_period(&self) -> Option<Permutation> {
        let n = self.rank();
        let last = self.steps.last().unwrap();
        let mut inv = vec![0; n];
        for (i, slot) in inv.iter_mut().enumerate() {
            let col = last.c_vector(i);
            let j = col.0.iter().position(|&x| x == 1)?;
            if col.degree() != 1 || !col.is_nonnegative() {
                return None;
            }
            *slot = j;
        }
        let nu = Permutation::new(inv).ok()?.inverse();
        if nu.act_on_matrix(&self.word.matrix) != last.b {
            return None;
        }
        for i in 0..n {
            let j = nu.inverse().apply(i);
            assert_eq!(column(&last.g, i), ExpVector::unit(n, j), "G disagrees with C at the period");
            if self.has_f() {
                assert!(last.f[i].is_one(), "F disagrees with C at the period");
            }
            assert_eq!(self.word.delta(i), self.word.delta(j), "period incompatible with the symmetrizer");
        }
        Some(nu)
    }

    /// Checks the C/G dualities at every step.
    pub fn verify_dualities(&self) -> Result<(), PatternError> {
        let n = self.rank();
        let b0 = self.word.matrix.rows();
        let delta = &self.word.decomposition.delta;
        let l = delta.iter().fold(1i64, |l, d| l.lcm(d));
        let id = identity(n);
        for (s, st) in self.steps.iter().enumerate() {
            let bt = st.b.rows();
            if mat_mul(&st.g, bt) != mat_mul(b0, &st.c) {
                return Err(PatternError::DualityViolation { step: s, which: "G B_t = B C" });
            }
            for i in 0..n {
                for j in 0..n {
                    let v: i64 = (0..n).map(|k| st.g[k][i] * st.c[k][j] * (l / delta[k]) * delta[i]).sum();
                    if v != l * id[i][j] {
                        return Err(PatternError::DualityViolation { step: s, which: "D⁻¹GᵀDC = I" });
                    }
                }
            }
            let db0: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| b0[i][j] * (l / delta[i])).collect()).collect();
            let rhs = mat_mul(&mat_mul(&transpose(&st.c), &db0), &st.c);
            for i in 0..n {
                for j in 0..n {
                    if bt[i][j] * (l / delta[i]) != rhs[i][j] {
                        return Err(PatternError::DualityViolation { step: s, which: "D B_t = Cᵀ D B C" });
                    }
                }
            }
            let one = cdl_algebra::BigInt::from(1);
            let dc = det(&st.c);
            let dg = det(&st.g);
            if (dc != one && dc != -one.clone()) || (dg != one && dg != -one.clone()) {
                return Err(PatternError::DualityViolation { step: s, which: "|det C| = |det G| = 1" });
            }
        }
        Ok(())
    }

    /// Run JSON: matrices per step, F-polynomials, signs.
    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|st| {
                let mut v = json!({ "b": st.b.rows(), "c": st.c, "g": st.g });
                if !st.f.is_empty() {
                    v["f"] = Value::Array(st.f.iter().map(|p| p.to_json()).collect());
                }
                v
            })
            .collect();
        json!({
            "matrix": self.word.matrix.rows(),
            "delta": self.word.decomposition.delta,
            "word": self.word.dirs.iter().map(|k| k + 1).collect::<Vec<_>>(),
            "eps": self.eps,
            "c_plus": self.c_plus.iter().map(|c| c.0.clone()).collect::<Vec<_>>(),
            "steps": steps,
        })
    }
}
