//! Signed multigraphs, switching, closed-walk signs and the four walk-girths.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::girth::{Girth, GirthVector, WalkType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn from_negative(negative: bool) -> Sign {
        if negative {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn flip(self) -> Sign {
        Sign::from_negative(!self.is_negative())
    }

    /// Product of two signs.
    pub fn mul(self, other: Sign) -> Sign {
        Sign::from_negative(self.is_negative() ^ other.is_negative())
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

pub type EdgeId = usize;

/// An edge with endpoints normalized so that `u <= v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

impl Edge {
    pub fn new(a: usize, b: usize, sign: Sign) -> Self {
        Edge {
            u: a.min(b),
            v: a.max(b),
            sign,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            assert_eq!(x, self.v, "vertex {x} is not an endpoint");
            self.u
        }
    }
}

/// Incremental construction that collapses parallel edges of equal sign and
/// reports the stable index of every inserted edge.
#[derive(Debug, Clone)]
pub struct SignedGraphBuilder {
    n: usize,
    edges: Vec<Edge>,
    index: HashMap<Edge, EdgeId>,
    name: Option<String>,
}

impl SignedGraphBuilder {
    pub fn new(n: usize) -> Self {
        SignedGraphBuilder {
            n,
            edges: Vec::new(),
            index: HashMap::new(),
            name: None,
        }
    }

    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn add_edge(&mut self, a: usize, b: usize, sign: Sign) -> Result<EdgeId> {
        for x in [a, b] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        let e = Edge::new(a, b, sign);
        let next = self.edges.len();
        let id = *self.index.entry(e).or_insert(next);
        if id == next {
            self.edges.push(e);
        }
        Ok(id)
    }

    pub fn build(self) -> SignedGraph {
        SignedGraph::from_parts(self.n, self.edges, self.name)
    }
}

/// A signed multigraph on vertices `0..n`.
///
/// Loops are allowed. Parallel edges are kept only when their signs differ
/// (a digon); same-sign duplicates collapse onto the first occurrence.
#[derive(Debug, Clone)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, EdgeId)>>,
    name: Option<String>,
}

impl PartialEq for SignedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for SignedGraph {}

impl SignedGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Sign)>,
    {
        let mut b = SignedGraphBuilder::new(n);
        for (u, v, s) in edges {
            b.add_edge(u, v, s)?;
        }
        Ok(b.build())
    }

    fn from_parts(n: usize, edges: Vec<Edge>, name: Option<String>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            if !e.is_loop() {
                adj[e.v].push((e.u, id));
            }
        }
        SignedGraph { n, edges, adj, name }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edges.get(id).ok_or(Error::EdgeOutOfRange(id))
    }

    /// Neighbours of `v` with the connecting edge; a loop appears once.
    pub fn neighbors(&self, v: usize) -> &[(usize, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn find_edge(&self, a: usize, b: usize, sign: Sign) -> Option<EdgeId> {
        let target = Edge::new(a, b, sign);
        self.adj
            .get(a)?
            .iter()
            .map(|&(_, id)| id)
            .find(|&id| self.edges[id] == target)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Edge set as a sorted set, for order-insensitive comparison.
    pub fn signed_edge_set(&self) -> BTreeSet<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn same_signed_edges(&self, other: &SignedGraph) -> bool {
        self.n == other.n && self.signed_edge_set() == other.signed_edge_set()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub(crate) fn require_connected_with_edge(&self) -> Result<()> {
        if self.edges.is_empty() {
            return Err(Error::EmptyEdgeSet);
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// Unsigned BFS distances from `src`.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &(w, _) in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// BFS over `V × {+,-}`: entry `[v][s]` is the length of a shortest walk
    /// from `src` to `v` whose sign is `s` (index 1 = negative).
    pub fn signed_bfs(&self, src: usize) -> Vec<[Option<usize>; 2]> {
        let mut dist = vec![[None; 2]; self.n];
        let mut queue = VecDeque::new();
        dist[src][0] = Some(0);
        queue.push_back((src, 0usize));
        while let Some((v, s)) = queue.pop_front() {
            let d = dist[v][s].unwrap();
            for &(w, id) in &self.adj[v] {
                let t = s ^ self.edges[id].sign.is_negative() as usize;
                if dist[w][t].is_none() {
                    dist[w][t] = Some(d + 1);
                    queue.push_back((w, t));
                }
            }
        }
        dist
    }

    /// Same underlying multigraph with every sign replaced by `sign`.
    ///
    /// Digons collapse, so this is only meaningful on graphs without them.
    pub fn with_uniform_sign(&self, sign: Sign) -> SignedGraph {
        SignedGraph::new(self.n, self.edges.iter().map(|e| (e.u, e.v, sign)))
            .expect("endpoints already validated")
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap();
                for &(w, _) in &self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == sv => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

/// A set `X` of vertices at which to switch.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Switching(BTreeSet<usize>);

impl Switching {
    pub fn new<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        Switching(vertices.into_iter().collect())
    }

    pub fn empty() -> Self {
        Switching::default()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self.0.iter().next_back() {
            Some(&v) if v >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }

    pub fn to_bits(&self, n: usize) -> Vec<bool> {
        let mut bits = vec![false; n];
        for v in self.iter().filter(|&v| v < n) {
            bits[v] = true;
        }
        bits
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Switching::new(bits.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v))
    }
}

/// Negates every edge of the cut `(X, V∖X)`. Loops never flip. Edge indices are kept.
pub fn switch(g: &SignedGraph, x: &Switching) -> Result<SignedGraph> {
    x.validate(g.n)?;
    let edges = g
        .edges
        .iter()
        .map(|e| {
            let flip = x.contains(e.u) != x.contains(e.v);
            Edge {
                sign: if flip { e.sign.flip() } else { e.sign },
                ..*e
            }
        })
        .collect();
    Ok(SignedGraph::from_parts(g.n, edges, g.name.clone()))
}

/// Shortest closed walk of each type, by one BFS per source over `V × Z₂²`.
///
/// An edge of sign `s` shifts the walk type by `(s is negative, 1)`.
pub fn walk_girths(g: &SignedGraph) -> Result<GirthVector> {
    g.require_connected_with_edge()?;
    let n = g.n;
    let mut best = [Girth::Infinite; 4];
    let mut dist = vec![usize::MAX; n * 4];
    let mut queue = VecDeque::new();
    for src in 0..n {
        dist.fill(usize::MAX);
        dist[src * 4] = 0;
        queue.push_back((src, WalkType::new(false, false)));
        while let Some((v, t)) = queue.pop_front() {
            let d = dist[v * 4 + t.index()];
            for &(w, id) in &g.adj[v] {
                let nt = t.shift(g.edges[id].sign.is_negative(), true);
                let slot = &mut dist[w * 4 + nt.index()];
                if *slot == usize::MAX {
                    *slot = d + 1;
                    queue.push_back((w, nt));
                }
            }
        }
        // Close the walk with a final arc into (src, t); this also handles t = 00,
        // where the empty walk must not count.
        for t in WalkType::ALL {
            for &(w, id) in &g.adj[src] {
                let prev = t.shift(g.edges[id].sign.is_negative(), true);
                let d = dist[w * 4 + prev.index()];
                if d != usize::MAX {
                    let cand = Girth::Finite(d as u64 + 1);
                    if cand < best[t.index()] {
                        best[t.index()] = cand;
                    }
                }
            }
        }
    }
    Ok(GirthVector::from_array(best))
}

/// Solves `x_u ⊕ x_v = parity(e)` over all edges with a BFS 2-colouring.
///
/// Returns `None` when the constraints are inconsistent.
fn solve_cut_parity(n: usize, constraints: &[(usize, usize, bool)]) -> Option<Vec<bool>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v, p) in constraints {
        if u == v {
            if p {
                return None;
            }
            continue;
        }
        adj[u].push((v, p));
        adj[v].push((u, p));
    }
    let mut bit: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if bit[s].is_some() {
            continue;
        }
        bit[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let bv = bit[v].unwrap();
            for &(w, p) in &adj[v] {
                match bit[w] {
                    None => {
                        bit[w] = Some(bv ^ p);
                        queue.push_back(w);
                    }
                    Some(bw) if bw != bv ^ p => return None,
                    _ => {}
                }
            }
        }
    }
    Some(bit.into_iter().map(|b| b.unwrap_or(false)).collect())
}

/// Finds `X` with `switch(s1, X)` edge-sign-identical to `s2`, or `None` if the
/// signatures are not switching equivalent.
///
/// The edges on which the signatures disagree must form a cut; digons impose no
/// constraint since both signs are present on either side.
pub fn switching_equivalent(s1: &SignedGraph, s2: &SignedGraph) -> Result<Option<Switching>> {
    if s1.n != s2.n {
        return Err(Error::UnderlyingGraphsDiffer);
    }
    let group = |g: &SignedGraph| {
        let mut m: BTreeMap<(usize, usize), Vec<Sign>> = BTreeMap::new();
        for e in &g.edges {
            m.entry((e.u, e.v)).or_default().push(e.sign);
        }
        m
    };
    let (a, b) = (group(s1), group(s2));
    if a.len() != b.len() {
        return Err(Error::UnderlyingGraphsDiffer);
    }
    let mut constraints = Vec::new();
    for ((key_a, signs_a), (key_b, signs_b)) in a.iter().zip(&b) {
        if key_a != key_b || signs_a.len() != signs_b.len() {
            return Err(Error::UnderlyingGraphsDiffer);
        }
        if signs_a.len() == 1 {
            constraints.push((key_a.0, key_a.1, signs_a[0] != signs_b[0]));
        }
    }
    let Some(bits) = solve_cut_parity(s1.n, &constraints) else {
        return Ok(None);
    };
    let x = Switching::from_bits(&bits);
    debug_assert!(switch(s1, &x).unwrap().same_signed_edges(s2));
    Ok(Some(x))
}

/// A switching that makes every edge of `g` carry `target`, if one exists.
pub fn switching_to_uniform(g: &SignedGraph, target: Sign) -> Option<Switching> {
    let constraints: Vec<_> = g
        .edges
        .iter()
        .map(|e| (e.u, e.v, e.sign != target))
        .collect();
    solve_cut_parity(g.n, &constraints).map(|bits| Switching::from_bits(&bits))
}

pub fn is_balanced(g: &SignedGraph) -> bool {
    switching_to_uniform(g, Sign::Positive).is_some()
}

pub fn is_antibalanced(g: &SignedGraph) -> bool {
    switching_to_uniform(g, Sign::Negative).is_some()
}

/// Which of the special classes a connected signed graph belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignedClass {
    /// Every cycle is of type 00 or 01: switching equivalent to all-positive.
    C01,
    /// Every cycle is even: signed bipartite.
    C10,
    /// Every cycle is of type 00 or 11: antibalanced.
    C11,
    Mixed,
}

impl fmt::Display for SignedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignedClass::C01 => "C01",
            SignedClass::C10 => "C10",
            SignedClass::C11 => "C11",
            SignedClass::Mixed => "mixed",
        })
    }
}

/// Class label; a graph that is both balanced and bipartite reports `C10`.
pub fn class_of(g: &SignedGraph) -> Result<SignedClass> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(if g.is_bipartite() {
        SignedClass::C10
    } else if is_antibalanced(g) {
        SignedClass::C11
    } else if is_balanced(g) {
        SignedClass::C01
    } else {
        SignedClass::Mixed
    })
}

/// Small named graphs used throughout tests and the CLI.
pub mod named {
    use super::*;

    /// Cycle `0-1-…-(len-1)-0` whose closing edge carries `closing`, all others positive.
    pub fn cycle(len: usize, closing: Sign) -> SignedGraph {
        assert!(len >= 3, "use loop or digon constructors for shorter cycles");
        let mut edges: Vec<_> = (0..len - 1).map(|i| (i, i + 1, Sign::Positive)).collect();
        edges.push((len - 1, 0, closing));
        SignedGraph::new(len, edges).unwrap()
    }

    /// `C_{-len}`: a cycle with exactly one negative edge.
    pub fn negative_cycle(len: usize) -> SignedGraph {
        match len {
            1 => negative_loop(),
            2 => digon(),
            _ => cycle(len, Sign::Negative),
        }
    }

    pub fn negative_loop() -> SignedGraph {
        SignedGraph::new(1, [(0, 0, Sign::Negative)]).unwrap()
    }

    pub fn digon() -> SignedGraph {
        SignedGraph::new(2, [(0, 1, Sign::Positive), (0, 1, Sign::Negative)]).unwrap()
    }

    /// Complete graph with the given edges negative, all others positive.
    pub fn complete(n: usize, negative: &[(usize, usize)]) -> SignedGraph {
        let neg: BTreeSet<_> = negative.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).map(|(u, v)| {
            let s = if neg.contains(&(u, v)) { Sign::Negative } else { Sign::Positive };
            (u, v, s)
        });
        SignedGraph::new(n, edges.collect::<Vec<_>>()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;
    use Girth::{Finite, Infinite};

    #[test]
    fn same_sign_parallel_edges_collapse() {
        let g = SignedGraph::new(
            2,
            [(0, 1, Sign::Positive), (1, 0, Sign::Positive), (0, 1, Sign::Negative)],
        )
        .unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.find_edge(1, 0, Sign::Negative), Some(1));
    }

    #[test]
    fn rejects_out_of_range_endpoint() {
        let err = SignedGraph::new(2, [(0, 2, Sign::Positive)]).unwrap_err();
        assert_eq!(err, Error::VertexOutOfRange { vertex: 2, n: 2 });
    }

    #[test]
    fn switch_examples() {
        let c4 = negative_cycle(4);
        assert_eq!(switch(&c4, &Switching::empty()).unwrap(), c4);
        assert_eq!(switch(&c4, &Switching::new(0..4)).unwrap(), c4);

        let e = SignedGraph::new(2, [(0, 1, Sign::Negative)]).unwrap();
        let s = switch(&e, &Switching::new([0])).unwrap();
        assert_eq!(s.edges()[0].sign, Sign::Positive);

        assert!(switch(&c4, &Switching::new([4])).is_err());
    }

    #[test]
    fn loops_never_flip() {
        let g = SignedGraph::new(2, [(0, 0, Sign::Negative), (0, 1, Sign::Positive)]).unwrap();
        let s = switch(&g, &Switching::new([0])).unwrap();
        assert_eq!(s.edges()[0].sign, Sign::Negative);
        assert_eq!(s.edges()[1].sign, Sign::Negative);
    }

    #[test]
    fn girths_of_small_cycles() {
        assert_eq!(
            walk_girths(&negative_cycle(4)).unwrap(),
            GirthVector::new(Finite(2), Infinite, Finite(4), Infinite)
        );
        assert_eq!(
            walk_girths(&negative_cycle(5)).unwrap(),
            GirthVector::new(Finite(2), Infinite, Infinite, Finite(5))
        );
    }

    #[test]
    fn girths_of_loop_and_digon() {
        assert_eq!(
            walk_girths(&negative_loop()).unwrap(),
            GirthVector::new(Finite(2), Infinite, Infinite, Finite(1))
        );
        assert_eq!(
            walk_girths(&digon()).unwrap(),
            GirthVector::new(Finite(2), Infinite, Finite(2), Infinite)
        );
    }

    #[test]
    fn girths_reject_empty_and_disconnected() {
        let empty = SignedGraph::new(3, []).unwrap();
        assert_eq!(walk_girths(&empty).unwrap_err(), Error::EmptyEdgeSet);
        let split = SignedGraph::new(3, [(0, 1, Sign::Positive)]).unwrap();
        assert_eq!(walk_girths(&split).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn equivalence_examples() {
        let a = negative_cycle(4);
        let b = SignedGraph::new(
            4,
            [
                (0, 1, Sign::Negative),
                (1, 2, Sign::Positive),
                (2, 3, Sign::Positive),
                (3, 0, Sign::Positive),
            ],
        )
        .unwrap();
        let x = switching_equivalent(&a, &b).unwrap().expect("equivalent");
        assert!(switch(&a, &x).unwrap().same_signed_edges(&b));

        let positive = cycle(4, Sign::Positive);
        assert_eq!(switching_equivalent(&a, &positive).unwrap(), None);

        let other = cycle(5, Sign::Positive);
        assert_eq!(
            switching_equivalent(&a, &other).unwrap_err(),
            Error::UnderlyingGraphsDiffer
        );
    }

    #[test]
    fn loop_signs_must_match() {
        let a = SignedGraph::new(1, [(0, 0, Sign::Negative)]).unwrap();
        let b = SignedGraph::new(1, [(0, 0, Sign::Positive)]).unwrap();
        assert_eq!(switching_equivalent(&a, &b).unwrap(), None);
    }

    #[test]
    fn classes() {
        assert_eq!(class_of(&negative_cycle(4)).unwrap(), SignedClass::C10);
        assert_eq!(class_of(&negative_cycle(5)).unwrap(), SignedClass::C11);
        assert_eq!(class_of(&cycle(5, Sign::Positive)).unwrap(), SignedClass::C01);
        assert_eq!(class_of(&complete(4, &[(0, 1)])).unwrap(), SignedClass::Mixed);
        // balanced and bipartite: reported as C10
        assert_eq!(class_of(&cycle(4, Sign::Positive)).unwrap(), SignedClass::C10);
        let split = SignedGraph::new(3, [(0, 1, Sign::Positive)]).unwrap();
        assert_eq!(class_of(&split).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn k4_one_negative_edge_has_mixed_cycle_signs() {
        // Enumerated by hand: triangles 012 and 013 contain edge 01 (negative),
        // triangle 023 does not; so there are positive and negative odd cycles.
        let k4 = complete(4, &[(0, 1)]);
        let g = walk_girths(&k4).unwrap();
        assert_eq!(g.g01, Finite(3));
        assert_eq!(g.g11, Finite(3));
    }
}
