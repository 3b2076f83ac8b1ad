//! Homomorphisms of signed graphs: the girth filter, an exhaustive
//! backtracking search, witness verification, and a seeded generator of
//! signed partial 2-trees.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signed::{
    is_antibalanced, walk_girths, EdgeId, Sign, SignedClass, SignedGraph, SignedGraphBuilder,
};

/// A homomorphism `(G, σ) → (H, π)`: switch the source at the vertices with a
/// set bit, then map vertices and edges preserving incidence and sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homomorphism {
    pub switch_bits: Vec<bool>,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<EdgeId>,
}

/// Necessary condition for a homomorphism: every walk-girth of `src` is at least that of `tgt`.
pub fn no_hom_filter(src: &SignedGraph, tgt: &SignedGraph) -> Result<bool> {
    Ok(walk_girths(src)?.dominates(&walk_girths(tgt)?))
}

/// Sign availability between target vertices: bit 0 positive, bit 1 negative.
struct SignTable {
    n: usize,
    bits: Vec<u8>,
}

impl SignTable {
    fn new(g: &SignedGraph) -> Self {
        let n = g.n();
        let mut bits = vec![0u8; n * n];
        for e in g.edges() {
            let b = 1 << e.sign.is_negative() as u8;
            bits[e.u * n + e.v] |= b;
            bits[e.v * n + e.u] |= b;
        }
        SignTable { n, bits }
    }

    fn has(&self, x: usize, y: usize, negative: bool) -> bool {
        self.bits[x * self.n + y] & (1 << negative as u8) != 0
    }
}

/// Source vertices in search order: BFS from a highest-degree root (lowest id
/// on ties), component by component.
fn search_order(g: &SignedGraph) -> Vec<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let root = (0..n)
            .filter(|&v| !seen[v])
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(w, _) in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    src: &'a SignedGraph,
    tgt: &'a SignedGraph,
    table: SignTable,
    order: Vec<usize>,
    /// `(switch bit, image)` per source vertex once assigned.
    assigned: Vec<Option<(bool, usize)>>,
}

impl Search<'_> {
    fn consistent(&self, v: usize, bit: bool, img: usize) -> bool {
        for &(w, id) in self.src.neighbors(v) {
            let neg = self.src.edges()[id].sign.is_negative();
            if w == v {
                if !self.table.has(img, img, neg) {
                    return false;
                }
            } else if let Some((wb, wi)) = self.assigned[w] {
                if !self.table.has(img, wi, neg ^ bit ^ wb) {
                    return false;
                }
            }
        }
        true
    }

    fn candidates(&self, v: usize) -> Vec<usize> {
        let anchor = self
            .src
            .neighbors(v)
            .iter()
            .find_map(|&(w, _)| if w != v { self.assigned[w] } else { None });
        match anchor {
            Some((_, img)) => {
                let mut c: Vec<usize> = self.tgt.neighbors(img).iter().map(|&(x, _)| x).collect();
                c.sort_unstable();
                c.dedup();
                c
            }
            None => (0..self.tgt.n()).collect(),
        }
    }

    fn run(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let v = self.order[k];
        let is_root = self
            .src
            .neighbors(v)
            .iter()
            .all(|&(w, _)| w == v || self.assigned[w].is_none());
        // a component root may keep its sign: switching a whole component changes nothing
        let bits: &[bool] = if is_root { &[false] } else { &[false, true] };
        for img in self.candidates(v) {
            for &bit in bits {
                if self.consistent(v, bit, img) {
                    self.assigned[v] = Some((bit, img));
                    if self.run(k + 1) {
                        return true;
                    }
                    self.assigned[v] = None;
                }
            }
        }
        false
    }
}

/// Target edge joining `x` and `y` with the given sign, lowest id first.
fn target_edge(tgt: &SignedGraph, x: usize, y: usize, sign: Sign) -> Option<EdgeId> {
    tgt.neighbors(x)
        .iter()
        .filter(|&&(w, id)| w == y && tgt.edges()[id].sign == sign)
        .map(|&(_, id)| id)
        .min()
}

/// Exhaustive search for a homomorphism; the first witness in search order is returned.
pub fn find_homomorphism(src: &SignedGraph, tgt: &SignedGraph) -> Result<Option<Homomorphism>> {
    if src.n() == 0 {
        return Ok(Some(Homomorphism {
            switch_bits: vec![],
            vertex_map: vec![],
            edge_map: vec![],
        }));
    }
    if tgt.n() == 0 {
        return Ok(None);
    }
    let mut search = Search {
        src,
        tgt,
        table: SignTable::new(tgt),
        order: search_order(src),
        assigned: vec![None; src.n()],
    };
    if !search.run(0) {
        return Ok(None);
    }
    let (switch_bits, vertex_map): (Vec<bool>, Vec<usize>) =
        search.assigned.into_iter().map(|a| a.unwrap()).unzip();
    let edge_map = src
        .edges()
        .iter()
        .map(|e| {
            let s = if switch_bits[e.u] != switch_bits[e.v] { e.sign.flip() } else { e.sign };
            target_edge(tgt, vertex_map[e.u], vertex_map[e.v], s).expect("search checked every edge")
        })
        .collect();
    let h = Homomorphism {
        switch_bits,
        vertex_map,
        edge_map,
    };
    debug_assert_eq!(verify_homomorphism(&h, src, tgt), Ok(true));
    Ok(Some(h))
}

/// Checks a witness edge by edge after switching.
///
/// Shape mismatches and out-of-range indices are reported as
/// [`Error::MalformedWitness`]; a well-formed witness that fails is `Ok(false)`.
pub fn verify_homomorphism(h: &Homomorphism, src: &SignedGraph, tgt: &SignedGraph) -> Result<bool> {
    let bad = |m: &str| Err(Error::MalformedWitness(m.into()));
    if h.switch_bits.len() != src.n() || h.vertex_map.len() != src.n() {
        return bad("switch_bits and vertex_map need one entry per source vertex");
    }
    if h.edge_map.len() != src.edge_count() {
        return bad("edge_map needs one entry per source edge");
    }
    if h.vertex_map.iter().any(|&x| x >= tgt.n()) {
        return bad("vertex_map points outside the target");
    }
    if h.edge_map.iter().any(|&x| x >= tgt.edge_count()) {
        return bad("edge_map points outside the target");
    }
    for (id, e) in src.edges().iter().enumerate() {
        let sign = if h.switch_bits[e.u] != h.switch_bits[e.v] { e.sign.flip() } else { e.sign };
        let t = tgt.edges()[h.edge_map[id]];
        let (x, y) = (h.vertex_map[e.u], h.vertex_map[e.v]);
        let ends = (t.u == x && t.v == y) || (t.u == y && t.v == x);
        if !ends || t.sign != sign {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The girth bound `C_{−g}` and the class a generated graph must belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GirthSpec {
    pub g: u64,
    pub class: SignedClass,
}

impl GirthSpec {
    /// `C10` for even `g`, `C11` for odd `g`: the class of `C_{−g}` itself.
    pub fn matching(g: u64) -> Self {
        GirthSpec {
            g,
            class: if g % 2 == 0 { SignedClass::C10 } else { SignedClass::C11 },
        }
    }

    pub fn admits(&self, g: &SignedGraph) -> Result<bool> {
        let in_class = match self.class {
            SignedClass::C10 => g.is_bipartite(),
            SignedClass::C11 => is_antibalanced(g),
            SignedClass::C01 => crate::signed::is_balanced(g),
            SignedClass::Mixed => true,
        };
        Ok(in_class && walk_girths(g)?.is_g_wide(self.g))
    }
}

/// Rejection budget of [`random_sp_signed_graph`].
pub const GENERATOR_BUDGET: usize = 10_000;

/// A random signed partial 2-tree on `n` vertices meeting `spec`, deterministic in `seed`.
///
/// Each attempt grows a 2-tree by joining each new vertex to both ends of a
/// random existing edge, deletes a random subset of edges while keeping the
/// graph connected, and signs every edge uniformly at random.
pub fn random_sp_signed_graph(n: usize, seed: u64, spec: GirthSpec) -> Result<SignedGraph> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("generator needs n >= 2, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATOR_BUDGET {
        let g = random_partial_two_tree(n, &mut rng)?;
        if spec.admits(&g)? {
            return Ok(g.with_name(format!("sp(n={n}, seed={seed}, g={})", spec.g)));
        }
    }
    Err(Error::BudgetExhausted(GENERATOR_BUDGET))
}

fn random_partial_two_tree(n: usize, rng: &mut ChaCha8Rng) -> Result<SignedGraph> {
    let mut edges = vec![(0, 1)];
    for v in 2..n {
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        edges.push((a, v));
        edges.push((b, v));
    }
    let keep_bias: f64 = rng.gen_range(0.2..1.0);
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.shuffle(rng);
    let mut alive = vec![true; edges.len()];
    for i in order {
        if rng.gen_bool(keep_bias) {
            continue;
        }
        alive[i] = false;
        if !connected(n, edges.iter().zip(&alive).filter(|(_, &a)| a).map(|(e, _)| *e)) {
            alive[i] = true;
        }
    }
    let mut b = SignedGraphBuilder::new(n);
    for (&(u, v), _) in edges.iter().zip(&alive).filter(|(_, &a)| a) {
        b.add_edge(u, v, Sign::from_negative(rng.gen_bool(0.5)))?;
    }
    Ok(b.build())
}

fn connected(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut comps = n;
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            comps -= 1;
        }
    }
    comps == 1
}

/// Whether the underlying simple graph has treewidth at most 2, by repeatedly
/// deleting vertices of degree at most 2 and joining the two neighbours of a
/// deleted degree-2 vertex.
pub fn is_partial_two_tree(g: &SignedGraph) -> bool {
    let n = g.n();
    let mut adj: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); n];
    for e in g.edges() {
        if e.u != e.v {
            adj[e.u].insert(e.v);
            adj[e.v].insert(e.u);
        }
    }
    let mut alive = vec![true; n];
    let mut left = n;
    loop {
        let Some(v) = (0..n).find(|&v| alive[v] && adj[v].len() <= 2) else {
            return left == 0;
        };
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &w in &nb {
            adj[w].remove(&v);
        }
        if let [x, y] = nb[..] {
            adj[x].insert(y);
            adj[y].insert(x);
        }
        adj[v].clear();
        alive[v] = false;
        left -= 1;
    }
}
