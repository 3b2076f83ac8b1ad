//! Extended Double Cover of signed and weighted signed graphs, signed
//! projective cubes, and lifting of walks into the cover.
//!
//! Cover vertices are numbered `v⁺ = 2v`, `v⁻ = 2v + 1`.

use crate::error::{Error, Result};
use crate::signed::{EdgeId, Sign, SignedGraph, SignedGraphBuilder};
use crate::weighted::WeightedSignedGraph;

/// Cover vertex of `v` on side `negative` (`false` = `v⁺`).
pub fn cover_vertex(v: usize, negative: bool) -> usize {
    2 * v + negative as usize
}

/// Base vertex and side of a cover vertex.
pub fn base_vertex(c: usize) -> (usize, bool) {
    (c / 2, c % 2 == 1)
}

/// A cover together with the correspondence between base and cover edges.
#[derive(Debug, Clone)]
pub struct ExtendedDoubleCover {
    pub graph: SignedGraph,
    /// `rungs[v]` is the negative edge `v⁺v⁻`.
    pub rungs: Vec<EdgeId>,
    /// `lifts[e][s]` is the cover edge leaving side `s` of the smaller endpoint of base edge `e`.
    pub lifts: Vec<[EdgeId; 2]>,
}

impl ExtendedDoubleCover {
    pub fn new(g: &SignedGraph) -> Self {
        let mut b = SignedGraphBuilder::new(2 * g.n());
        if let Some(name) = g.name() {
            b = b.name(format!("EDC({name})"));
        }
        let rungs = (0..g.n())
            .map(|v| {
                b.add_edge(cover_vertex(v, false), cover_vertex(v, true), Sign::Negative)
                    .unwrap()
            })
            .collect();
        let lifts = g
            .edges()
            .iter()
            .map(|e| {
                let twist = e.sign.is_negative();
                let mut pair = [0; 2];
                for side in [false, true] {
                    pair[side as usize] = b
                        .add_edge(
                            cover_vertex(e.u, side),
                            cover_vertex(e.v, side ^ twist),
                            Sign::Positive,
                        )
                        .unwrap();
                }
                pair
            })
            .collect();
        ExtendedDoubleCover {
            graph: b.build(),
            rungs,
            lifts,
        }
    }

    /// Cover edge used when traversing base edge `e` from cover vertex `from`.
    fn lifted_step(&self, base: &SignedGraph, e: EdgeId, from: usize) -> (EdgeId, usize) {
        let edge = base.edges()[e];
        let (x, side) = base_vertex(from);
        let twist = edge.sign.is_negative();
        let y = edge.other(x);
        let to = cover_vertex(y, side ^ twist);
        // lifts are indexed by the side at the smaller endpoint
        let side_at_u = if x == edge.u { side } else { side ^ twist };
        (self.lifts[e][side_at_u as usize], to)
    }
}

/// `EDC(G, σ)`: rungs `v⁺v⁻` negative; a positive edge `uv` gives `u⁺v⁺, u⁻v⁻`,
/// a negative one `u⁺v⁻, u⁻v⁺`, all positive.
///
/// A negative loop at `v` yields the positive edge `v⁺v⁻`, which together with
/// the rung forms a digon.
pub fn edc(g: &SignedGraph) -> SignedGraph {
    ExtendedDoubleCover::new(g).graph
}

/// Weighted cover: rungs of weight −1; an edge of weight `p > 0` gives straight
/// edges of weight `p` and crossing edges of weight `−(p+1)`; weight `−p < 0`
/// gives crossing edges `p` and straight edges `−(p+1)`.
pub fn edc_weighted(g: &WeightedSignedGraph) -> WeightedSignedGraph {
    let mut edges = Vec::with_capacity(g.n() + 4 * g.edges().len());
    for v in 0..g.n() {
        edges.push((cover_vertex(v, false), cover_vertex(v, true), -1));
    }
    for e in g.edges() {
        let p = e.w.abs();
        let (straight, crossing) = if e.w > 0 { (p, -(p + 1)) } else { (-(p + 1), p) };
        for side in [false, true] {
            edges.push((cover_vertex(e.u, side), cover_vertex(e.v, side), straight));
            edges.push((cover_vertex(e.u, side), cover_vertex(e.v, !side), crossing));
        }
    }
    WeightedSignedGraph::new(2 * g.n(), edges).expect("cover endpoints are in range")
}

/// Signed projective cube on `Z₂ᵏ`: positive edges between words at Hamming
/// distance 1, negative edges between complementary words. `spc(1)` is the digon.
pub fn spc(k: u32) -> Result<SignedGraph> {
    if !(1..=20).contains(&k) {
        return Err(Error::OutOfRange(format!("spc dimension {k} not in 1..=20")));
    }
    let n = 1usize << k;
    let mask = n - 1;
    let mut b = SignedGraphBuilder::new(n).name(format!("SPC({k})"));
    for x in 0..n {
        for bit in 0..k {
            let y = x ^ (1 << bit);
            if x < y {
                b.add_edge(x, y, Sign::Positive)?;
            }
        }
        let y = x ^ mask;
        if x < y {
            b.add_edge(x, y, Sign::Negative)?;
        }
    }
    Ok(b.build())
}

/// Bijection from `EDC(SPC(k−1))` to `SPC(k)`: `x⁺ ↦ (x, 0)`, `x⁻ ↦ (x̄, 1)`
/// with the new coordinate as the top bit.
pub fn spc_cover_relabel(k: u32, cover_id: usize) -> usize {
    let (x, negative) = base_vertex(cover_id);
    let low_mask = (1usize << (k - 1)) - 1;
    if negative {
        (x ^ low_mask) | (1 << (k - 1))
    } else {
        x
    }
}

/// A walk given by its start vertex and edge sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub start: usize,
    pub edges: Vec<EdgeId>,
}

impl Walk {
    /// Vertex sequence, validating incidence.
    pub fn vertices(&self, g: &SignedGraph) -> Result<Vec<usize>> {
        g.check_vertex(self.start)
            .map_err(|_| Error::InvalidWalk(format!("start vertex {} out of range", self.start)))?;
        let mut out = vec![self.start];
        let mut cur = self.start;
        for &id in &self.edges {
            let e = g
                .edge(id)
                .map_err(|_| Error::InvalidWalk(format!("edge {id} does not exist")))?;
            if e.u != cur && e.v != cur {
                return Err(Error::InvalidWalk(format!("edge {id} is not incident to vertex {cur}")));
            }
            cur = e.other(cur);
            out.push(cur);
        }
        Ok(out)
    }

    pub fn end(&self, g: &SignedGraph) -> Result<usize> {
        Ok(*self.vertices(g)?.last().unwrap())
    }

    pub fn sign(&self, g: &SignedGraph) -> Sign {
        self.edges
            .iter()
            .fold(Sign::Positive, |s, &id| s.mul(g.edges()[id].sign))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_closed(&self, g: &SignedGraph) -> Result<bool> {
        Ok(self.end(g)? == self.start)
    }

    /// The reverse walk.
    pub fn reversed(&self, g: &SignedGraph) -> Result<Walk> {
        Ok(Walk {
            start: self.end(g)?,
            edges: self.edges.iter().rev().copied().collect(),
        })
    }
}

/// Lifts `walk` into `cover` starting on side `start_sign` of its first vertex.
///
/// Positive edges keep the side and negative edges switch it. A negative closed
/// walk ends on the opposite side and is closed with the rung, gaining one
/// unit of length.
pub fn lift_walk(
    base: &SignedGraph,
    cover: &ExtendedDoubleCover,
    walk: &Walk,
    start_sign: Sign,
) -> Result<Walk> {
    let vertices = walk.vertices(base)?;
    let start = cover_vertex(walk.start, start_sign.is_negative());
    let mut cur = start;
    let mut edges = Vec::with_capacity(walk.len() + 1);
    for &e in &walk.edges {
        let (ce, next) = cover.lifted_step(base, e, cur);
        edges.push(ce);
        cur = next;
    }
    if *vertices.last().unwrap() == walk.start && cur != start {
        edges.push(cover.rungs[walk.start]);
    }
    Ok(Walk { start, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::girth::Girth;
    use crate::signed::{named, walk_girths, Edge};
    use crate::weighted::weighted_walk_girths;

    #[test]
    fn cover_of_negative_four_cycle_is_mobius_ladder() {
        // base: 0-1-2-3 positive path, 3-0 negative
        let c4 = named::negative_cycle(4);
        let cover = edc(&c4);
        assert_eq!(cover.n(), 8);
        let p = |a, b| Edge::new(a, b, Sign::Positive);
        let m = |a, b| Edge::new(a, b, Sign::Negative);
        let expected = [
            m(0, 1), m(2, 3), m(4, 5), m(6, 7),
            p(0, 2), p(1, 3), p(2, 4), p(3, 5), p(4, 6), p(5, 7),
            p(6, 1), p(7, 0),
        ];
        assert_eq!(cover.signed_edge_set(), expected.into_iter().collect());
    }

    #[test]
    fn cover_of_digon_is_spc2_shape() {
        let cover = edc(&named::digon());
        assert_eq!(cover.n(), 4);
        assert_eq!(cover.edges().iter().filter(|e| e.sign == Sign::Positive).count(), 4);
        assert_eq!(cover.edges().iter().filter(|e| e.sign == Sign::Negative).count(), 2);
    }

    #[test]
    fn cover_of_single_vertex_is_negative_edge() {
        let cover = edc(&SignedGraph::new(1, []).unwrap());
        assert_eq!(cover.edges(), &[Edge::new(0, 1, Sign::Negative)]);
    }

    #[test]
    fn cover_of_loops() {
        assert!(edc(&named::negative_loop()).same_signed_edges(&named::digon()));
        let pos = SignedGraph::new(1, [(0, 0, Sign::Positive)]).unwrap();
        let c = edc(&pos);
        assert_eq!(c.edge_count(), 3);
        assert!(c.find_edge(0, 0, Sign::Positive).is_some());
        assert!(c.find_edge(1, 1, Sign::Positive).is_some());
    }

    #[test]
    fn weighted_cover_rule() {
        let g = WeightedSignedGraph::new(2, [(0, 1, 2)]).unwrap();
        let c = edc_weighted(&g);
        assert_eq!(c.weight(0, 2), Some(2));
        assert_eq!(c.weight(1, 3), Some(2));
        assert_eq!(c.weight(0, 3), Some(-3));
        assert_eq!(c.weight(1, 2), Some(-3));
        assert_eq!(c.weight(0, 1), Some(-1));

        let g = WeightedSignedGraph::new(2, [(0, 1, -1)]).unwrap();
        let c = edc_weighted(&g);
        assert_eq!(c.weight(0, 3), Some(1));
        assert_eq!(c.weight(1, 2), Some(1));
        assert_eq!(c.weight(0, 2), Some(-2));
        assert_eq!(c.weight(1, 3), Some(-2));
    }

    #[test]
    fn weighted_cover_of_unit_graph_matches_signed_cover_girths() {
        let g = named::negative_cycle(5);
        let w = WeightedSignedGraph::from_signed(&g);
        let cw = weighted_walk_girths(&edc_weighted(&w)).unwrap();
        let cs = walk_girths(&edc(&g)).unwrap();
        // the weighted cover also has the ∓2 shortcut edges, which are
        // rung+edge combinations, so girths agree
        assert_eq!(cw, cs);
    }

    #[test]
    fn spc_small() {
        assert!(spc(1).unwrap().same_signed_edges(&named::digon()));
        let s2 = spc(2).unwrap();
        assert_eq!(s2.n(), 4);
        assert_eq!(s2.edges().iter().filter(|e| !e.sign.is_negative()).count(), 4);
        assert_eq!(s2.edges().iter().filter(|e| e.sign.is_negative()).count(), 2);
        assert!(spc(0).is_err());
    }

    #[test]
    fn spc_is_iterated_cover() {
        for k in 2..=5 {
            let cover = edc(&spc(k - 1).unwrap());
            let relabelled = SignedGraph::new(
                cover.n(),
                cover.edges().iter().map(|e| {
                    (spc_cover_relabel(k, e.u), spc_cover_relabel(k, e.v), e.sign)
                }),
            )
            .unwrap();
            assert!(relabelled.same_signed_edges(&spc(k).unwrap()), "k={k}");
        }
    }

    #[test]
    fn lift_positive_closed_walk_stays_on_plus_side() {
        let c4 = named::negative_cycle(4);
        let cover = ExtendedDoubleCover::new(&c4);
        // edge 0 = (0,1); back and forth twice
        let w = Walk { start: 0, edges: vec![0, 0, 0, 0] };
        let lifted = lift_walk(&c4, &cover, &w, Sign::Positive).unwrap();
        assert_eq!(lifted.len(), 4);
        assert!(lifted.is_closed(&cover.graph).unwrap());
        assert_eq!(lifted.start, 0);
        assert_eq!(lifted.sign(&cover.graph), Sign::Positive);
    }

    #[test]
    fn lift_negative_cycle_gains_rung() {
        let c4 = named::negative_cycle(4);
        let cover = ExtendedDoubleCover::new(&c4);
        let w = Walk { start: 0, edges: vec![0, 1, 2, 3] };
        assert_eq!(w.sign(&c4), Sign::Negative);
        for side in [Sign::Positive, Sign::Negative] {
            let lifted = lift_walk(&c4, &cover, &w, side).unwrap();
            assert_eq!(lifted.len(), 5);
            assert!(lifted.is_closed(&cover.graph).unwrap());
            assert_eq!(lifted.sign(&cover.graph), Sign::Negative);
        }
        let g = walk_girths(&edc(&c4)).unwrap();
        assert_eq!(g.g11, Girth::Finite(5));
    }

    #[test]
    fn lift_then_reverse_concatenates() {
        let c5 = named::negative_cycle(5);
        let cover = ExtendedDoubleCover::new(&c5);
        let w = Walk { start: 1, edges: vec![1, 2, 3] };
        let up = lift_walk(&c5, &cover, &w, Sign::Positive).unwrap();
        let end = up.end(&cover.graph).unwrap();
        let back = up.reversed(&cover.graph).unwrap();
        assert_eq!(back.start, end);
        let joined = Walk {
            start: up.start,
            edges: up.edges.iter().chain(&back.edges).copied().collect(),
        };
        assert_eq!(joined.len(), 6);
        assert!(joined.is_closed(&cover.graph).unwrap());
    }

    #[test]
    fn invalid_walk_rejected() {
        let c4 = named::negative_cycle(4);
        let cover = ExtendedDoubleCover::new(&c4);
        let w = Walk { start: 0, edges: vec![1] };
        assert!(matches!(
            lift_walk(&c4, &cover, &w, Sign::Positive),
            Err(Error::InvalidWalk(_))
        ));
    }
}
