use std::fmt;

use crate::{ExchangeMatrix, IntMatrix, SeedError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A finite-type Dynkin diagram with the standard vertex labels.
///
/// `D_r`: path `1..r-2` with `r-1` and `r` attached to `r-2`.
/// `E_6`: path `1,2,3,5,6` with `4` attached to `3`.
/// `E_7`: path `1..6` with `7` attached to `3`.
/// `E_8`: path `1..7` with `8` attached to `5`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DynkinType {
    pub family: Family,
    pub rank: usize,
    pub coxeter_number: usize,
    /// The involution `a ↦ ω(a)` with `w₀(α_a) = -α_{ω(a)}`, 0-indexed.
    pub omega: Vec<usize>,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Option<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return None;
        }
        let h = match family {
            Family::A => rank + 1,
            Family::B | Family::C => 2 * rank,
            Family::D => 2 * rank - 2,
            Family::E => [12, 18, 30][rank - 6],
            Family::F => 12,
            Family::G => 6,
        };
        let mut omega: Vec<usize> = (0..rank).collect();
        match family {
            Family::A => omega.reverse(),
            Family::D if rank % 2 == 1 => omega.swap(rank - 2, rank - 1),
            Family::E if rank == 6 => {
                omega.swap(0, 5);
                omega.swap(1, 4);
            }
            _ => {}
        }
        Some(DynkinType { family, rank, coxeter_number: h, omega })
    }

    /// Parses names like `A3`, `D5`, `E6`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let family = match s.chars().next()?.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        };
        let rank: usize = s[1..].parse().ok()?;
        Self::new(family, rank)
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Simple edges of the underlying graph, 0-indexed, `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let r = self.rank;
        match self.family {
            Family::A | Family::B | Family::C | Family::F | Family::G => (1..r).map(|a| (a - 1, a)).collect(),
            Family::D => {
                let mut e: Vec<_> = (1..r - 1).map(|a| (a - 1, a)).collect();
                e.push((r - 3, r - 1));
                e
            }
            Family::E => match r {
                6 => vec![(0, 1), (1, 2), (2, 4), (4, 5), (2, 3)],
                7 => vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)],
                _ => vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)],
            },
        }
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges().iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }

    pub fn neighbors(&self, a: usize) -> Vec<usize> {
        (0..self.rank).filter(|&b| self.adjacent(a, b)).collect()
    }

    /// Cartan matrix `a_ij = 2(α_i, α_j)/(α_i, α_i)`.
    pub fn cartan(&self) -> IntMatrix {
        let r = self.rank;
        let mut a = vec![vec![0i64; r]; r];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (x, y) in self.edges() {
            a[x][y] = -1;
            a[y][x] = -1;
        }
        match self.family {
            Family::B => a[r - 1][r - 2] = -2,
            Family::C => a[r - 2][r - 1] = -2,
            Family::F => a[2][1] = -2,
            Family::G => a[1][0] = -3,
            _ => {}
        }
        a
    }

    pub fn name(&self) -> String {
        format!("{:?}{}", self.family, self.rank)
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// The Dynkin type of the Cartan counterpart of `B`, if it is of finite type.
///
/// Pure table lookup on the diagram; the mutation class is not searched.
pub fn classify_finite_type(b: &ExchangeMatrix) -> Result<Option<DynkinType>, SeedError> {
    let n = b.rank();
    if b.components().len() > 1 {
        return Err(SeedError::Decomposable);
    }
    if n == 1 {
        return Ok(DynkinType::new(Family::A, 1));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if b.get(i, j) != 0 {
                edges.push((i, j, (b.get(i, j) * b.get(j, i)).abs()));
            }
        }
    }
    if edges.len() != n - 1 || edges.iter().any(|e| e.2 >= 4) {
        return Ok(None);
    }
    let degree = |v: usize| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
    let triple = edges.iter().filter(|e| e.2 == 3).count();
    let double: Vec<_> = edges.iter().filter(|e| e.2 == 2).collect();
    if triple > 0 {
        return Ok(if n == 2 { DynkinType::new(Family::G, 2) } else { None });
    }
    if (0..n).any(|v| degree(v) > 3) {
        return Ok(None);
    }
    match double.len() {
        0 => {}
        1 => {
            if (0..n).any(|v| degree(v) > 2) {
                return Ok(None);
            }
            let &(i, j, _) = double[0];
            let short = if b.get(i, j).abs() == 2 { i } else { j };
            let long = if short == i { j } else { i };
            // Vertices on the short side of the double edge are short.
            let side = |start: usize, blocked: usize| {
                let mut seen = vec![start];
                let mut k = 0;
                while k < seen.len() {
                    let v = seen[k];
                    for e in &edges {
                        let w = if e.0 == v { e.1 } else if e.1 == v { e.0 } else { continue };
                        if w != blocked && !seen.contains(&w) {
                            seen.push(w);
                        }
                    }
                    k += 1;
                }
                seen.len()
            };
            let ns = side(short, long);
            let nl = side(long, short);
            return Ok(if ns == 1 {
                DynkinType::new(Family::B, n)
            } else if nl == 1 {
                DynkinType::new(Family::C, n)
            } else if n == 4 {
                DynkinType::new(Family::F, 4)
            } else {
                None
            });
        }
        _ => return Ok(None),
    }
    let branch: Vec<usize> = (0..n).filter(|&v| degree(v) == 3).collect();
    match branch.len() {
        0 => Ok(DynkinType::new(Family::A, n)),
        1 => {
            let c = branch[0];
            let mut arms = Vec::new();
            for e in edges.iter().filter(|e| e.0 == c || e.1 == c) {
                let mut prev = c;
                let mut cur = if e.0 == c { e.1 } else { e.0 };
                let mut len = 1;
                loop {
                    let next = edges.iter().find_map(|f| {
                        let w = if f.0 == cur { f.1 } else if f.1 == cur { f.0 } else { return None };
                        (w != prev).then_some(w)
                    });
                    match next {
                        Some(w) => {
                            prev = cur;
                            cur = w;
                            len += 1;
                        }
                        None => break,
                    }
                }
                arms.push(len);
            }
            arms.sort_unstable();
            Ok(match (arms[0], arms[1], arms[2]) {
                (1, 1, _) => DynkinType::new(Family::D, n),
                (1, 2, 2) => DynkinType::new(Family::E, 6),
                (1, 2, 3) => DynkinType::new(Family::E, 7),
                (1, 2, 4) => DynkinType::new(Family::E, 8),
                _ => None,
            })
        }
        _ => Ok(None),
    }
}
