//! Source problems of the hardness constructions, with brute-force oracles.

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};

/// Largest instance the brute-force oracles will enumerate.
const ORACLE_CAP: usize = 25;

fn oracle_cap(size: usize) -> Result<()> {
    crate::subsets::check_cap(size, ORACLE_CAP)
}

/// Does some `x ∈ {0,1}^ℓ` satisfy `Ax ≥ b`?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawIlp")]
pub struct ZeroOneIlp {
    #[serde(rename = "A")]
    a: Vec<Vec<i64>>,
    b: Vec<i64>,
}

#[derive(Deserialize)]
struct RawIlp {
    #[serde(rename = "A")]
    a: Vec<Vec<i64>>,
    b: Vec<i64>,
}

impl TryFrom<RawIlp> for ZeroOneIlp {
    type Error = Error;

    fn try_from(raw: RawIlp) -> Result<Self> {
        ZeroOneIlp::new(raw.a, raw.b)
    }
}

impl ZeroOneIlp {
    pub fn new(a: Vec<Vec<i64>>, b: Vec<i64>) -> Result<Self> {
        let cols = a.first().map_or(0, Vec::len);
        if a.is_empty() || cols == 0 {
            return usage("ILP needs at least one constraint and one variable");
        }
        if a.iter().any(|r| r.len() != cols) {
            return usage("ILP matrix rows have different lengths");
        }
        if b.len() != a.len() {
            return usage(format!(
                "ILP has {} constraints but {} right-hand sides",
                a.len(),
                b.len()
            ));
        }
        Ok(ZeroOneIlp { a, b })
    }

    pub fn a(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn num_constraints(&self) -> usize {
        self.a.len()
    }

    pub fn num_vars(&self) -> usize {
        self.a[0].len()
    }

    pub fn is_feasible(&self, x: &[bool]) -> bool {
        self.a.iter().zip(&self.b).all(|(row, &b)| {
            let lhs: i128 = row
                .iter()
                .zip(x)
                .filter(|(_, &on)| on)
                .map(|(&v, _)| v as i128)
                .sum();
            lhs >= b as i128
        })
    }

    /// First feasible `x` in increasing binary order, if any.
    pub fn solve_brute_force(&self) -> Result<Option<Vec<bool>>> {
        let l = self.num_vars();
        oracle_cap(l)?;
        Ok((0u64..1 << l)
            .map(|mask| bits(mask, l))
            .find(|x| self.is_feasible(x)))
    }
}

fn bits(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|k| mask >> k & 1 == 1).collect()
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges are stored with the smaller endpoint first, sorted.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return usage("graph needs at least one vertex");
        }
        let mut out = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return usage(format!("edge ({u}, {v}) has an endpoint outside 0..{n}"));
            }
            if u == v {
                return usage(format!("self-loop at vertex {u}"));
            }
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return usage("duplicate edge");
        }
        Ok(Graph { n, edges: out })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Reads DIMACS edge format: `c` comments, one `p edge N M` line, then
    /// `e u v` lines with 1-based endpoints.
    pub fn from_dimacs(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let bad = |what: &str| Error::Parse(format!("DIMACS line {}: {what}", no + 1));
            let mut f = line.split_whitespace();
            match f.next() {
                None | Some("c") => {}
                Some("p") => {
                    if n.is_some() {
                        return Err(bad("second problem line"));
                    }
                    if f.next() != Some("edge") {
                        return Err(bad("expected `p edge N M`"));
                    }
                    n = Some(
                        f.next()
                            .and_then(|t| t.parse::<usize>().ok())
                            .ok_or_else(|| bad("bad vertex count"))?,
                    );
                }
                Some("e") => {
                    let mut end = || -> Result<usize> {
                        let v: usize = f
                            .next()
                            .and_then(|t| t.parse().ok())
                            .ok_or_else(|| bad("bad endpoint"))?;
                        v.checked_sub(1).ok_or_else(|| bad("endpoints are 1-based"))
                    };
                    let (u, v) = (end()?, end()?);
                    edges.push((u, v));
                }
                Some(other) => return Err(bad(&format!("unknown line type {other:?}"))),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("DIMACS input has no `p edge` line".into()))?;
        Graph::new(n, &edges).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }

    pub fn is_independent(&self, mask: u64) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| mask >> u & 1 == 0 || mask >> v & 1 == 0)
    }

    /// Size of a maximum independent set, by enumeration.
    pub fn max_independent_set(&self) -> Result<usize> {
        oracle_cap(self.n)?;
        Ok((0u64..1 << self.n)
            .filter(|&m| self.is_independent(m))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0))
    }
}

/// Exact cover by 3-sets over elements `1..=t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawX3c")]
pub struct X3cInstance {
    t: usize,
    sets: Vec<[usize; 3]>,
}

#[derive(Deserialize)]
struct RawX3c {
    t: usize,
    sets: Vec<Vec<usize>>,
}

impl TryFrom<RawX3c> for X3cInstance {
    type Error = Error;

    fn try_from(raw: RawX3c) -> Result<Self> {
        X3cInstance::new(raw.t, &raw.sets)
    }
}

impl X3cInstance {
    pub fn new(t: usize, sets: &[Vec<usize>]) -> Result<Self> {
        if t == 0 || !t.is_multiple_of(3) {
            return usage(format!(
                "X3C element count must be a positive multiple of 3, got {t}"
            ));
        }
        let mut out = Vec::with_capacity(sets.len());
        for s in sets {
            let triple: [usize; 3] = s
                .as_slice()
                .try_into()
                .map_err(|_| Error::Usage(format!("X3C set {s:?} is not a triple")))?;
            if triple.iter().any(|&x| x == 0 || x > t) {
                return usage(format!("X3C set {s:?} has elements outside 1..={t}"));
            }
            if triple[0] == triple[1] || triple[0] == triple[2] || triple[1] == triple[2] {
                return usage(format!("X3C set {s:?} repeats an element"));
            }
            out.push(triple);
        }
        Ok(X3cInstance { t, sets: out })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn s(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[[usize; 3]] {
        &self.sets
    }

    pub fn contains(&self, set: usize, element: usize) -> bool {
        self.sets[set].contains(&element)
    }

    /// Indices of the first exact cover found by enumeration, if any.
    pub fn exact_cover(&self) -> Result<Option<Vec<usize>>> {
        oracle_cap(self.s())?;
        let full: u64 = (1u64 << self.t) - 1;
        let as_mask = |s: &[usize; 3]| s.iter().fold(0u64, |m, &x| m | 1 << (x - 1));
        let masks: Vec<u64> = self.sets.iter().map(as_mask).collect();
        let pick = self.t / 3;
        Ok((0u64..1 << self.s())
            .filter(|c| c.count_ones() as usize == pick)
            .find_map(|choice| {
                let mut covered = 0u64;
                for (_, m) in masks
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| choice >> i & 1 == 1)
                {
                    if covered & m != 0 {
                        return None;
                    }
                    covered |= m;
                }
                (covered == full).then(|| (0..self.s()).filter(|i| choice >> i & 1 == 1).collect())
            }))
    }
}

/// Is there a set of at most `k` elements meeting every given set?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHittingSet")]
pub struct HittingSetInstance {
    num_elements: usize,
    sets: Vec<Vec<usize>>,
    k: usize,
}

#[derive(Deserialize)]
struct RawHittingSet {
    num_elements: usize,
    sets: Vec<Vec<usize>>,
    k: usize,
}

impl TryFrom<RawHittingSet> for HittingSetInstance {
    type Error = Error;

    fn try_from(raw: RawHittingSet) -> Result<Self> {
        HittingSetInstance::new(raw.num_elements, raw.sets, raw.k)
    }
}

impl HittingSetInstance {
    /// Elements are 1-based.
    pub fn new(num_elements: usize, sets: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        if num_elements == 0 {
            return usage("hitting set needs at least one element");
        }
        if k == 0 {
            return usage("hitting set size k must be at least 1");
        }
        for s in &sets {
            if s.is_empty() {
                return usage("hitting set instance contains an empty set");
            }
            if s.iter().any(|&x| x == 0 || x > num_elements) {
                return usage(format!("set {s:?} has elements outside 1..={num_elements}"));
            }
        }
        Ok(HittingSetInstance {
            num_elements,
            sets,
            k,
        })
    }

    pub fn num_elements(&self) -> usize {
        self.num_elements
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Size of a smallest hitting set, by enumeration.
    pub fn min_hitting_set(&self) -> Result<usize> {
        oracle_cap(self.num_elements)?;
        let hits = |mask: u64| {
            self.sets
                .iter()
                .all(|s| s.iter().any(|&x| mask >> (x - 1) & 1 == 1))
        };
        Ok((0u64..1 << self.num_elements)
            .filter(|&m| hits(m))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap_or(0))
    }

    pub fn is_hittable(&self) -> Result<bool> {
        Ok(self.min_hitting_set()? <= self.k)
    }
}
