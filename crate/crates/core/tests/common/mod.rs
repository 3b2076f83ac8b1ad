//! Brute-force oracles shared by the integration tests.
//!
//! Everything here works from the raw edge list and avoids the library's own
//! search routines.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sgh::girth::Girth;
use sgh::{GirthVector, Sign, SignedGraph};

/// Adjacency as `(neighbour, negative)` pairs; a loop appears once.
pub fn adjacency(g: &SignedGraph) -> Vec<Vec<(usize, bool)>> {
    let mut adj = vec![Vec::new(); g.n()];
    for e in g.edges() {
        let neg = e.sign == Sign::Negative;
        adj[e.u].push((e.v, neg));
        if e.u != e.v {
            adj[e.v].push((e.u, neg));
        }
    }
    adj
}

/// Walk-girths by stepping the reachable `(vertex, sign)` frontier one edge at a
/// time from every start vertex, for lengths up to `4n`.
pub fn girths_by_frontier(g: &SignedGraph) -> GirthVector {
    let n = g.n();
    let adj = adjacency(g);
    let mut best = [None::<u64>; 4];
    for s in 0..n {
        let mut cur = vec![[false; 2]; n];
        cur[s][0] = true;
        for len in 1..=(4 * n as u64) {
            let mut next = vec![[false; 2]; n];
            for v in 0..n {
                for sign in 0..2 {
                    if cur[v][sign] {
                        for &(w, neg) in &adj[v] {
                            next[w][sign ^ neg as usize] = true;
                        }
                    }
                }
            }
            for sign in 0..2 {
                if next[s][sign] {
                    let idx = 2 * sign + (len % 2) as usize;
                    if best[idx].is_none_or(|b| len < b) {
                        best[idx] = Some(len);
                    }
                }
            }
            cur = next;
        }
    }
    let f = |x: Option<u64>| Girth::from(x);
    GirthVector::new(f(best[0]), f(best[1]), f(best[2]), f(best[3]))
}

/// Plain BFS distances.
pub fn bfs(g: &SignedGraph, s: usize) -> Vec<Option<u64>> {
    let adj = adjacency(g);
    let mut d = vec![None; g.n()];
    d[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for &(w, _) in &adj[v] {
            if d[w].is_none() {
                d[w] = Some(d[v].unwrap() + 1);
                q.push_back(w);
            }
        }
    }
    d
}

/// Algebraic distance from `s`: `+d` when some shortest path is positive, else `−d`.
pub fn algebraic_distance_oracle(g: &SignedGraph, s: usize) -> Vec<Option<i64>> {
    let adj = adjacency(g);
    let n = g.n();
    let mut d = vec![[None::<u64>; 2]; n];
    d[s][0] = Some(0);
    let mut q = VecDeque::from([(s, 0usize)]);
    while let Some((v, sign)) = q.pop_front() {
        let dv = d[v][sign].unwrap();
        for &(w, neg) in &adj[v] {
            let t = sign ^ neg as usize;
            if d[w][t].is_none() {
                d[w][t] = Some(dv + 1);
                q.push_back((w, t));
            }
        }
    }
    let plain = bfs(g, s);
    (0..n)
        .map(|v| {
            let dist = plain[v]? as i64;
            Some(if d[v][0] == Some(dist as u64) { dist } else { -dist })
        })
        .collect()
}

/// Whether `u` and `v` lie on a common negative cycle of length exactly `len`,
/// by enumerating all simple paths from `u` back to `u`.
pub fn on_negative_cycle_oracle(g: &SignedGraph, len: usize) -> BTreeSet<(usize, usize)> {
    let mut pairs = BTreeSet::new();
    for e in g.edges() {
        if len == 1 && e.u == e.v && e.sign == Sign::Negative {
            pairs.insert((e.u, e.u));
        }
    }
    if len < 2 {
        return pairs;
    }
    // Edges by id so that digons count as 2-cycles.
    let mut inc: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); g.n()];
    for (id, e) in g.edges().iter().enumerate() {
        if e.u != e.v {
            let neg = e.sign == Sign::Negative;
            inc[e.u].push((e.v, id, neg));
            inc[e.v].push((e.u, id, neg));
        }
    }
    fn go(
        inc: &[Vec<(usize, usize, bool)>],
        start: usize,
        path: &mut Vec<usize>,
        used: &mut Vec<usize>,
        neg: bool,
        len: usize,
        pairs: &mut BTreeSet<(usize, usize)>,
    ) {
        let v = *path.last().unwrap();
        for &(w, id, en) in &inc[v] {
            if used.contains(&id) {
                continue;
            }
            let sign = neg ^ en;
            if w == start && path.len() == len && sign {
                for &a in path.iter() {
                    for &b in path.iter() {
                        if a < b {
                            pairs.insert((a, b));
                        }
                    }
                }
            } else if w > start && !path.contains(&w) && path.len() < len {
                path.push(w);
                used.push(id);
                go(inc, start, path, used, sign, len, pairs);
                used.pop();
                path.pop();
            }
        }
    }
    for s in 0..g.n() {
        go(&inc, s, &mut vec![s], &mut Vec::new(), false, len, &mut pairs);
    }
    pairs
}

/// `f_g` written out directly.
pub fn f_g(x: i64, g: u64) -> u64 {
    if x > 0 {
        x as u64
    } else {
        (g as i64 + x) as u64
    }
}

/// Whether `C_{−g}`'s girth vector is dominated, read straight off the frontier oracle.
pub fn wide_oracle(g: &SignedGraph, len: u64) -> bool {
    let v = girths_by_frontier(g);
    let need = if len % 2 == 0 {
        [Some(2), None, Some(len), None]
    } else {
        [Some(2), None, None, Some(len)]
    };
    [v.g00, v.g01, v.g10, v.g11]
        .iter()
        .zip(need)
        .all(|(have, need)| match (have.value(), need) {
            (_, None) => !have.is_finite(),
            (None, Some(_)) => true,
            (Some(h), Some(k)) => h >= k,
        })
}

/// A random connected signed multigraph: a random tree plus `extra` random
/// edges, occasionally loops or opposite-sign parallels.
pub fn random_signed_graph(rng: &mut ChaCha8Rng, n: usize, extra: usize, odd_edges: bool) -> SignedGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        let p = rng.gen_range(0..v);
        edges.push((p, v, Sign::from_negative(rng.gen_bool(0.5))));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = if odd_edges && rng.gen_bool(0.1) { u } else { rng.gen_range(0..n) };
        edges.push((u, v, Sign::from_negative(rng.gen_bool(0.5))));
    }
    if odd_edges && rng.gen_bool(0.1) && n >= 2 {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.push((u, v, Sign::Positive));
            edges.push((u, v, Sign::Negative));
        }
    }
    SignedGraph::new(n, edges).unwrap()
}

/// Checks a homomorphism witness edge by edge from scratch.
pub fn witness_oracle(h: &sgh::hom::Homomorphism, src: &SignedGraph, tgt: &SignedGraph) -> bool {
    if h.switch_bits.len() != src.n() || h.vertex_map.len() != src.n() || h.edge_map.len() != src.edge_count() {
        return false;
    }
    src.edges().iter().zip(&h.edge_map).all(|(e, &f)| {
        let Some(t) = tgt.edges().get(f) else { return false };
        let (a, b) = (h.vertex_map[e.u], h.vertex_map[e.v]);
        let flipped = h.switch_bits[e.u] ^ h.switch_bits[e.v];
        let sign = if flipped { e.sign.flip() } else { e.sign };
        ((t.u, t.v) == (a, b) || (t.u, t.v) == (b, a)) && t.sign == sign
    })
}
