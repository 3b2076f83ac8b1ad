//! Bounded enumeration of simple cycles in signed multigraphs.
//!
//! Loops are cycles of length 1 and the two edges of a digon form a cycle of length 2.

use crate::signed::{EdgeId, Sign, SignedGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    /// Vertices in traversal order, starting at the smallest.
    pub vertices: Vec<usize>,
    /// `edges[i]` joins `vertices[i]` and `vertices[(i + 1) % len]`.
    pub edges: Vec<EdgeId>,
    pub sign: Sign,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

/// Every simple cycle of length at most `max_len`, each reported once.
pub fn simple_cycles(g: &SignedGraph, max_len: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    for s in 0..g.n() {
        for &(w, id) in g.neighbors(s) {
            if w == s && max_len >= 1 {
                out.push(Cycle {
                    vertices: vec![s],
                    edges: vec![id],
                    sign: g.edges()[id].sign,
                });
            }
        }
        let mut on_path = vec![false; g.n()];
        on_path[s] = true;
        let mut vertices = vec![s];
        let mut edges = Vec::new();
        extend(g, s, max_len, &mut on_path, &mut vertices, &mut edges, Sign::Positive, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &SignedGraph,
    s: usize,
    max_len: usize,
    on_path: &mut [bool],
    vertices: &mut Vec<usize>,
    edges: &mut Vec<EdgeId>,
    sign: Sign,
    out: &mut Vec<Cycle>,
) {
    let v = *vertices.last().unwrap();
    for &(w, id) in g.neighbors(v) {
        if w == v {
            continue;
        }
        let next_sign = sign.mul(g.edges()[id].sign);
        if w == s {
            // each cycle is seen in both directions; keep the one whose first edge id is smaller
            if let Some(&first) = edges.first() {
                if first < id && edges.len() < max_len {
                    let mut cyc_edges = edges.clone();
                    cyc_edges.push(id);
                    out.push(Cycle {
                        vertices: vertices.clone(),
                        edges: cyc_edges,
                        sign: next_sign,
                    });
                }
            }
            continue;
        }
        if w < s || on_path[w] || edges.len() + 2 > max_len {
            continue;
        }
        on_path[w] = true;
        vertices.push(w);
        edges.push(id);
        extend(g, s, max_len, on_path, vertices, edges, next_sign, out);
        edges.pop();
        vertices.pop();
        on_path[w] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed::named;

    #[test]
    fn counts_on_small_graphs() {
        assert_eq!(simple_cycles(&named::negative_cycle(5), 10).len(), 1);
        assert_eq!(simple_cycles(&named::negative_cycle(5), 4).len(), 0);
        // K4 has 4 triangles and 3 four-cycles
        let k4 = named::complete(4, &[]);
        let cs = simple_cycles(&k4, 4);
        assert_eq!(cs.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cs.iter().filter(|c| c.len() == 4).count(), 3);
    }

    #[test]
    fn loops_and_digons() {
        let cs = simple_cycles(&named::negative_loop(), 3);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].sign, Sign::Negative);
        let cs = simple_cycles(&named::digon(), 3);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].len(), 2);
        assert_eq!(cs[0].sign, Sign::Negative);
    }
}
