//! Weighted signed graphs, g-wideness, the three-cycle gadget `T_g(p,q,r)` and
//! the arithmetic test for g-wide triples.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::girth::{Girth, GirthVector, WalkType};
use crate::signed::{self, Sign, SignedGraph, SignedGraphBuilder, Switching};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedEdge {
    pub u: usize,
    pub v: usize,
    pub w: i64,
}

impl WeightedEdge {
    pub fn new(a: usize, b: usize, w: i64) -> Self {
        WeightedEdge {
            u: a.min(b),
            v: a.max(b),
            w,
        }
    }

    pub fn length(&self) -> u64 {
        self.w.unsigned_abs()
    }

    pub fn sign(&self) -> Sign {
        Sign::from_negative(self.w < 0)
    }
}

/// A graph whose edges carry nonzero integer weights: the sign of the weight is
/// the edge sign and its absolute value the edge length.
#[derive(Debug, Clone)]
pub struct WeightedSignedGraph {
    n: usize,
    edges: Vec<WeightedEdge>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl PartialEq for WeightedSignedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for WeightedSignedGraph {}

impl WeightedSignedGraph {
    /// Identical `(u, v, w)` triples collapse; parallel edges with distinct weights are kept.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (a, b, w) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if w == 0 {
                return Err(Error::ZeroWeight);
            }
            let e = WeightedEdge::new(a, b, w);
            if seen.insert(e) {
                list.push(e);
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (id, e) in list.iter().enumerate() {
            adj[e.u].push((e.v, id));
            if e.u != e.v {
                adj[e.v].push((e.u, id));
            }
        }
        Ok(WeightedSignedGraph { n, edges: list, adj })
    }

    /// The 1-weighted graph of a signed graph.
    pub fn from_signed(g: &SignedGraph) -> Self {
        let edges = g
            .edges()
            .iter()
            .map(|e| (e.u, e.v, if e.sign.is_negative() { -1 } else { 1 }));
        WeightedSignedGraph::new(g.n(), edges.collect::<Vec<_>>()).expect("valid signed graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    /// Largest absolute weight; 0 for an edgeless graph.
    pub fn k_bound(&self) -> u64 {
        self.edges.iter().map(WeightedEdge::length).max().unwrap_or(0)
    }

    /// Weight of the first edge joining `a` and `b`.
    pub fn weight(&self, a: usize, b: usize) -> Option<i64> {
        self.adj
            .get(a)?
            .iter()
            .find(|&&(w, _)| w == b)
            .map(|&(_, id)| self.edges[id].w)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Negates the weight of every edge in the cut `(X, V∖X)`.
    pub fn switch(&self, x: &Switching) -> Result<WeightedSignedGraph> {
        x.validate(self.n)?;
        let edges = self.edges.iter().map(|e| {
            let flip = x.contains(e.u) != x.contains(e.v);
            (e.u, e.v, if flip { -e.w } else { e.w })
        });
        WeightedSignedGraph::new(self.n, edges.collect::<Vec<_>>())
    }
}

/// Anything with the four walk-girths.
pub trait WalkGirths {
    fn walk_girths(&self) -> Result<GirthVector>;
}

impl WalkGirths for SignedGraph {
    fn walk_girths(&self) -> Result<GirthVector> {
        signed::walk_girths(self)
    }
}

impl WalkGirths for WeightedSignedGraph {
    fn walk_girths(&self) -> Result<GirthVector> {
        weighted_walk_girths(self)
    }
}

/// Shortest closed walk of each type where an edge contributes `|w|` to the
/// length and `sign(w)` to the sign. Dijkstra per source over `V × Z₂²`.
pub fn weighted_walk_girths(g: &WeightedSignedGraph) -> Result<GirthVector> {
    if g.edges.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n;
    let mut best = [Girth::Infinite; 4];
    let mut dist = vec![u64::MAX; n * 4];
    let mut heap = BinaryHeap::new();
    for src in 0..n {
        dist.fill(u64::MAX);
        dist[src * 4] = 0;
        heap.push(Reverse((0u64, src, 0usize)));
        while let Some(Reverse((d, v, ti))) = heap.pop() {
            if d > dist[v * 4 + ti] {
                continue;
            }
            let t = WalkType::from_index(ti);
            for &(w, id) in &g.adj[v] {
                let e = &g.edges[id];
                let nt = t.shift(e.w < 0, e.length() % 2 == 1);
                let nd = d + e.length();
                let slot = &mut dist[w * 4 + nt.index()];
                if nd < *slot {
                    *slot = nd;
                    heap.push(Reverse((nd, w, nt.index())));
                }
            }
        }
        for t in WalkType::ALL {
            for &(w, id) in &g.adj[src] {
                let e = &g.edges[id];
                let prev = t.shift(e.w < 0, e.length() % 2 == 1);
                let d = dist[w * 4 + prev.index()];
                if d != u64::MAX {
                    let cand = Girth::Finite(d + e.length());
                    if cand < best[t.index()] {
                        best[t.index()] = cand;
                    }
                }
            }
        }
    }
    Ok(GirthVector::from_array(best))
}

/// Every walk-girth is at least the corresponding walk-girth of `C_{-g}`.
pub fn is_g_wide<G: WalkGirths + ?Sized>(graph: &G, g: u64) -> Result<bool> {
    if g == 0 {
        return Err(Error::OutOfRange("g must be positive".into()));
    }
    Ok(graph.walk_girths()?.is_g_wide(g))
}

/// An ordered triple `(p, q, r)` read against cycle length `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub g: u64,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}) @ g={}", self.p, self.q, self.r, self.g)
    }
}

impl Triple {
    pub fn new(p: i64, q: i64, r: i64, g: u64) -> Self {
        Triple { p, q, r, g }
    }

    fn in_range(&self, x: i64) -> bool {
        x != 0 && x.unsigned_abs() < self.g
    }

    /// Whether all three entries satisfy `1 ≤ |x| ≤ g−1`.
    pub fn is_proper(&self) -> bool {
        self.in_range(self.p) && self.in_range(self.q) && self.in_range(self.r)
    }

    fn check_proper(&self) -> Result<()> {
        if self.is_proper() {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("triple {self} needs 1 <= |p|,|q|,|r| <= g-1")))
        }
    }

    pub fn magnitude_sum(&self) -> u64 {
        self.p.unsigned_abs() + self.q.unsigned_abs() + self.r.unsigned_abs()
    }

    /// The representative with all entries positive, obtained by replacing each
    /// negative entry `x` with `g + x` (same cycle, other arc).
    pub fn canonical(&self) -> Triple {
        let g = self.g as i64;
        let fix = |x: i64| if x < 0 { g + x } else { x };
        Triple::new(fix(self.p), fix(self.q), fix(self.r), self.g)
    }

    /// The three switchings at `x`, `y`, `z` of the gadget.
    pub fn sign_flips(&self) -> [Triple; 3] {
        let Triple { p, q, r, g } = *self;
        [
            Triple::new(-p, q, -r, g),
            Triple::new(-p, -q, r, g),
            Triple::new(p, -q, -r, g),
        ]
    }
}

/// Arithmetic g-wideness test for a triple.
///
/// `(0, r, r)` is accepted as the degenerate edge case and `(0, q, r)` with
/// `q ≠ r` is rejected; zeros in other positions are out of range.
pub fn triple_is_g_wide_closed_form(t: &Triple) -> Result<bool> {
    if t.p == 0 && t.in_range(t.q) && t.in_range(t.r) {
        return Ok(t.q == t.r);
    }
    t.check_proper()?;
    let (a, b, c) = (t.p.unsigned_abs(), t.q.unsigned_abs(), t.r.unsigned_abs());
    let sum = a + b + c;
    let g = t.g;
    let positive = [t.p, t.q, t.r].iter().filter(|&&x| x < 0).count() % 2 == 0;
    Ok(if positive {
        sum % 2 == 0 && 2 * a.max(b).max(c) <= sum && sum <= 2 * g
    } else {
        sum % 2 == g % 2 && g <= sum && sum <= g + 2 * a.min(b).min(c)
    })
}

/// `T_g(p,q,r)`: three negative `g`-cycles glued at `x = 0`, `y = 1`, `z = 2`.
///
/// On the cycle through `x, y` the `x→y` arc of length `|p|` has sign `sign(p)`
/// and the complementary arc of length `g − |p|` the opposite sign; likewise
/// `(y, z, q)` and `(z, x, r)`. Internal path vertices are numbered from 3 in
/// the order: short arc, long arc, per pair.
pub fn build_t(p: i64, q: i64, r: i64, g: u64) -> Result<SignedGraph> {
    let t = Triple::new(p, q, r, g);
    t.check_proper()?;
    let g = g as usize;
    let n = 3 + 3 * (g - 2);
    let mut b = SignedGraphBuilder::new(n).name(format!("T_{g}({p},{q},{r})"));
    let mut next = 3;
    for (from, to, val) in [(0, 1, p), (1, 2, q), (2, 0, r)] {
        let short = val.unsigned_abs() as usize;
        let sign = Sign::from_negative(val < 0);
        for (len, s) in [(short, sign), (g - short, sign.flip())] {
            let mut prev = from;
            for step in 0..len {
                let cur = if step + 1 == len {
                    to
                } else {
                    next += 1;
                    next - 1
                };
                let es = if step == 0 { s } else { Sign::Positive };
                b.add_edge(prev, cur, es)?;
                prev = cur;
            }
        }
    }
    debug_assert_eq!(next, n);
    Ok(b.build())
}

/// All ordered g-wide triples with `1 ≤ |p|,|q|,|r| ≤ g−1`, sorted.
pub fn enumerate_lg(g: u64) -> Result<Vec<Triple>> {
    if g < 2 {
        return Err(Error::OutOfRange(format!("L_g needs g >= 2, got {g}")));
    }
    let m = g as i64 - 1;
    let values: Vec<i64> = (-m..=m).filter(|&x| x != 0).collect();
    let mut out = Vec::new();
    for &p in &values {
        for &q in &values {
            for &r in &values {
                let t = Triple::new(p, q, r, g);
                if triple_is_g_wide_closed_form(&t)? {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

/// Members of `L_g` with all entries positive.
pub fn positive_lg(g: u64) -> Result<Vec<Triple>> {
    Ok(enumerate_lg(g)?
        .into_iter()
        .filter(|t| t.p > 0 && t.q > 0 && t.r > 0)
        .collect())
}
