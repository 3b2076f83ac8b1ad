//! Algebraic distance, girth-transformed distance graphs, g-closed triangle
//! sets and SP-completeness certificates, including their lift to the
//! Extended Double Cover.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::edc::{cover_vertex, edc};
use crate::error::{Error, Result};
use crate::signed::{named, SignedGraph};
use crate::weighted::{is_g_wide, positive_lg, WeightedSignedGraph};

/// `±d(u, v)`, positive iff some shortest `u–v` path is positive.
pub fn algebraic_distance(g: &SignedGraph, u: usize, v: usize) -> Result<i64> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::SameVertex);
    }
    let layers = g.signed_bfs(u);
    let d = match (layers[v][0], layers[v][1]) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => return Err(Error::Disconnected),
    };
    Ok(if layers[v][0] == Some(d) { d as i64 } else { -(d as i64) })
}

/// All algebraic distances from `u`; entry `u` is 0.
pub fn algebraic_distances_from(g: &SignedGraph, u: usize) -> Result<Vec<i64>> {
    g.check_vertex(u)?;
    let layers = g.signed_bfs(u);
    layers
        .iter()
        .enumerate()
        .map(|(v, l)| {
            if v == u {
                return Ok(0);
            }
            match (l[0], l[1]) {
                (Some(a), Some(b)) if a <= b => Ok(a as i64),
                (Some(_), Some(b)) => Ok(-(b as i64)),
                (Some(a), None) => Ok(a as i64),
                (None, Some(b)) => Ok(-(b as i64)),
                (None, None) => Err(Error::Disconnected),
            }
        })
        .collect()
}

/// `f_g(x) = x` for `x > 0` and `g + x` otherwise, on `−⌈g/2⌉+1 ≤ x ≤ ⌊g/2⌋`, `x ≠ 0`.
pub fn f_g_transform(x: i64, g: u64) -> Result<u64> {
    let g = g as i64;
    let lo = -((g + 1) / 2) + 1;
    let hi = g / 2;
    if x == 0 || x < lo || x > hi {
        return Err(Error::OutOfRange(format!("f_{g}({x}) needs {lo} <= x <= {hi}, x != 0")));
    }
    Ok(if x > 0 { x as u64 } else { (g + x) as u64 })
}

/// Marks every vertex lying on a negative cycle of length exactly `len` through `u`.
pub fn negative_cycle_partners(g: &SignedGraph, u: usize, len: u64) -> Result<Vec<bool>> {
    g.check_vertex(u)?;
    let len = len as usize;
    let n = g.n();
    let mut marked = vec![false; n];
    if len == 0 {
        return Ok(marked);
    }
    if len == 1 {
        marked[u] = g.find_edge(u, u, crate::signed::Sign::Negative).is_some();
        return Ok(marked);
    }
    let back: Vec<usize> = g
        .bfs_distances(u)
        .into_iter()
        .map(|d| d.unwrap_or(usize::MAX))
        .collect();
    let mut search = CycleSearch {
        g,
        u,
        len,
        back: &back,
        on_path: vec![false; n],
        path: vec![u],
        marked: &mut marked,
        remaining: n,
    };
    search.on_path[u] = true;
    search.extend(usize::MAX, false);
    Ok(marked)
}

struct CycleSearch<'a> {
    g: &'a SignedGraph,
    u: usize,
    len: usize,
    back: &'a [usize],
    on_path: Vec<bool>,
    path: Vec<usize>,
    marked: &'a mut Vec<bool>,
    remaining: usize,
}

impl CycleSearch<'_> {
    fn extend(&mut self, first_edge: usize, negative: bool) {
        let v = *self.path.last().unwrap();
        let steps = self.path.len() - 1;
        for &(w, id) in self.g.neighbors(v) {
            if self.remaining == 0 {
                return;
            }
            if w == v {
                continue;
            }
            let neg = negative ^ self.g.edges()[id].sign.is_negative();
            if w == self.u {
                if steps + 1 == self.len && neg && id != first_edge {
                    for &x in &self.path {
                        if !self.marked[x] {
                            self.marked[x] = true;
                            self.remaining -= 1;
                        }
                    }
                }
                continue;
            }
            if self.on_path[w] || steps + 1 + self.back[w] > self.len {
                continue;
            }
            self.on_path[w] = true;
            self.path.push(w);
            self.extend(if steps == 0 { id } else { first_edge }, neg);
            self.path.pop();
            self.on_path[w] = false;
        }
    }
}

/// Whether some negative cycle of length exactly `len` contains both `u` and `v`.
pub fn pair_on_negative_g_cycle(g: &SignedGraph, u: usize, v: usize, len: u64) -> Result<bool> {
    g.check_vertex(v)?;
    Ok(negative_cycle_partners(g, u, len)?[v])
}

/// All pairs `u < v` on a common negative cycle of length `len`, sorted.
pub fn negative_cycle_pairs(g: &SignedGraph, len: u64) -> Result<Vec<(usize, usize)>> {
    let rows: Vec<Vec<bool>> = (0..g.n())
        .into_par_iter()
        .map(|u| negative_cycle_partners(g, u, len))
        .collect::<Result<_>>()?;
    Ok((0..g.n())
        .flat_map(|u| ((u + 1)..g.n()).map(move |v| (u, v)))
        .filter(|&(u, v)| rows[u][v])
        .collect())
}

/// Weighted graph on `V(base)` with `ω(uv) = f_g(ad(u, v))` for each listed pair.
pub fn build_girth_transformed_distance_graph(
    base: &SignedGraph,
    pairs: &[(usize, usize)],
    g: u64,
) -> Result<WeightedSignedGraph> {
    let mut by_source: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(u, v) in pairs {
        base.check_vertex(u)?;
        base.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex);
        }
        by_source.entry(u).or_default().push(v);
    }
    let mut edges = Vec::with_capacity(pairs.len());
    let mut sources: Vec<_> = by_source.into_iter().collect();
    sources.sort();
    for (u, vs) in sources {
        let partners = negative_cycle_partners(base, u, g)?;
        let ad = algebraic_distances_from(base, u)?;
        for v in vs {
            if !partners[v] {
                return Err(Error::NotOnNegativeCycle(u.min(v), u.max(v), g));
            }
            edges.push((u, v, f_g_transform(ad[v], g)? as i64));
        }
    }
    WeightedSignedGraph::new(base.n(), edges)
}

/// Every triangle `{x < y < z}` of a simple weighted graph.
pub fn all_triangles(host: &WeightedSignedGraph) -> BTreeSet<[usize; 3]> {
    let n = host.n();
    let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for e in host.edges() {
        if e.u != e.v {
            nbrs[e.u].insert(e.v);
            nbrs[e.v].insert(e.u);
        }
    }
    let mut out = BTreeSet::new();
    for x in 0..n {
        for &y in nbrs[x].range(x + 1..) {
            for &z in nbrs[y].range(y + 1..) {
                if nbrs[x].contains(&z) {
                    out.insert([x, y, z]);
                }
            }
        }
    }
    out
}

/// A family of triangles in a weighted host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleSet {
    host: WeightedSignedGraph,
    triangles: BTreeSet<[usize; 3]>,
}

impl TriangleSet {
    /// Each triangle is stored with sorted vertices; all three pairs must be host edges.
    pub fn new<I>(host: WeightedSignedGraph, triangles: I) -> Result<Self>
    where
        I: IntoIterator<Item = [usize; 3]>,
    {
        let mut set = BTreeSet::new();
        for mut t in triangles {
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::MalformedTriangles(format!("{t:?} repeats a vertex")));
            }
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                if host.weight(a, b).is_none() {
                    return Err(Error::MalformedTriangles(format!(
                        "{t:?} uses {a}{b}, which is not a host edge"
                    )));
                }
            }
            set.insert(t);
        }
        Ok(TriangleSet { host, triangles: set })
    }

    pub fn host(&self) -> &WeightedSignedGraph {
        &self.host
    }

    pub fn triangles(&self) -> &BTreeSet<[usize; 3]> {
        &self.triangles
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Edges appearing in some triangle, as sorted pairs.
    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.triangles
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])])
            .collect()
    }

    fn weight(&self, a: usize, b: usize) -> i64 {
        self.host.weight(a, b).expect("triangle edges are host edges")
    }
}

/// An edge `xy` of weight `p` and a triple `(p, q, r)` with no completing triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Violation {
    pub x: usize,
    pub y: usize,
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

/// Every closure failure of `t`, sorted.
///
/// For each edge `xy ∈ E` of weight `p` and each positive `(p, q, r) ∈ L_g`, some
/// triangle `xyz` must have `(ω(zx), ω(zy))` equal to `(q, r)` or `(g−q, g−r)`.
/// Since `L_g` is closed under swapping `q` and `r`, checking `x < y` covers both orientations.
pub fn closure_violations(t: &TriangleSet, g: u64) -> Result<Vec<Violation>> {
    if g < 2 {
        return Err(Error::OutOfRange(format!("closure needs g >= 2, got {g}")));
    }
    for e in t.host.edges() {
        if e.w < 1 || e.w as u64 > g {
            return Err(Error::MalformedTriangles(format!(
                "edge {}{} has weight {} outside 1..={g}",
                e.u, e.v, e.w
            )));
        }
    }
    let mut by_p: HashMap<i64, Vec<(i64, i64)>> = HashMap::new();
    for tr in positive_lg(g)? {
        by_p.entry(tr.p).or_default().push((tr.q, tr.r));
    }
    let mut around: HashMap<(usize, usize), HashSet<(i64, i64)>> = HashMap::new();
    for &[a, b, c] in &t.triangles {
        for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
            around
                .entry((x, y))
                .or_default()
                .insert((t.weight(z, x), t.weight(z, y)));
        }
    }
    let gi = g as i64;
    let mut edges: Vec<_> = around.into_iter().collect();
    edges.sort_unstable_by_key(|(k, _)| *k);
    let mut out: Vec<Violation> = edges
        .par_iter()
        .flat_map_iter(|((x, y), seen)| {
            let p = t.weight(*x, *y);
            by_p.get(&p)
                .into_iter()
                .flatten()
                .filter(move |&&(q, r)| !seen.contains(&(q, r)) && !seen.contains(&(gi - q, gi - r)))
                .map(move |&(q, r)| Violation { x: *x, y: *y, p, q, r })
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

pub fn is_g_closed(t: &TriangleSet, g: u64) -> Result<bool> {
    Ok(closure_violations(t, g)?.is_empty())
}

/// Evidence that `base` bounds every signed series-parallel graph satisfying the
/// girth conditions of `C_{−g}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub base: SignedGraph,
    pub g: u64,
    pub dist_graph: WeightedSignedGraph,
    pub tset: TriangleSet,
}

/// Base cases with no triangles: the negative loop (g = 1) and the digon (g = 2).
fn is_seed(base: &SignedGraph, g: u64) -> bool {
    match g {
        1 => base.same_signed_edges(&named::negative_loop()),
        2 => base.same_signed_edges(&named::digon()),
        _ => false,
    }
}

impl Certificate {
    /// The certificate of the negative loop for `g = 1`.
    pub fn negative_loop_seed() -> Self {
        let base = named::negative_loop();
        let dist = WeightedSignedGraph::new(1, []).unwrap();
        Certificate {
            base,
            g: 1,
            tset: TriangleSet::new(dist.clone(), []).unwrap(),
            dist_graph: dist,
        }
    }

    /// The certificate of the digon for `g = 2`.
    pub fn digon_seed() -> Self {
        let base = named::digon();
        let dist = WeightedSignedGraph::new(2, [(0, 1, 1)]).unwrap();
        Certificate {
            base,
            g: 2,
            tset: TriangleSet::new(dist.clone(), []).unwrap(),
            dist_graph: dist,
        }
    }

    /// Assembles and validates a certificate; distance edges are stored sorted.
    pub fn new(
        base: SignedGraph,
        g: u64,
        dist_graph: WeightedSignedGraph,
        triangles: impl IntoIterator<Item = [usize; 3]>,
    ) -> Result<Self> {
        let mut sorted = dist_graph.edges().to_vec();
        sorted.sort_unstable();
        let dist_graph =
            WeightedSignedGraph::new(dist_graph.n(), sorted.into_iter().map(|e| (e.u, e.v, e.w)))?;
        let tset = TriangleSet::new(dist_graph.clone(), triangles)?;
        let c = Certificate { base, g, dist_graph, tset };
        c.validate()?;
        Ok(c)
    }

    pub fn is_seed(&self) -> bool {
        is_seed(&self.base, self.g) && self.tset.is_empty()
    }

    /// Checks every invariant: wideness, distance-graph weights and cycle
    /// condition, and g-closedness of a nonempty triangle set.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidCertificate(m));
        if self.dist_graph.n() != self.base.n() {
            return bad("distance graph and base have different orders".into());
        }
        if self.tset.host != self.dist_graph {
            return bad("triangle host differs from the distance graph".into());
        }
        if !is_g_wide(&self.base, self.g)? {
            return Err(Error::NotWide(self.g));
        }
        if self.tset.is_empty() && !is_seed(&self.base, self.g) {
            return bad("triangle set is empty".into());
        }
        let mut pairs = BTreeSet::new();
        for e in self.dist_graph.edges() {
            if e.u == e.v || !pairs.insert((e.u, e.v)) {
                return bad(format!("distance graph edge {}{} is a loop or repeated", e.u, e.v));
            }
        }
        if self.g >= 2 {
            let pairs: Vec<_> = pairs.into_iter().collect();
            let expected = build_girth_transformed_distance_graph(&self.base, &pairs, self.g)?;
            for e in self.dist_graph.edges() {
                let want = expected.weight(e.u, e.v).unwrap();
                if want != e.w {
                    return bad(format!(
                        "edge {}{} has weight {} but f_g(ad) = {want}",
                        e.u, e.v, e.w
                    ));
                }
            }
            if let Some(v) = closure_violations(&self.tset, self.g)?.first() {
                return bad(format!(
                    "not {}-closed: edge {}{} lacks ({}, {}, {})",
                    self.g, v.x, v.y, v.p, v.q, v.r
                ));
            }
        } else if !pairs.is_empty() {
            return bad("the g = 1 certificate has no distance edges".into());
        }
        Ok(())
    }
}

/// Searches for a certificate by pruning the maximal candidate to its greatest
/// g-closed sub-family.
///
/// The candidate joins every pair on a common negative g-cycle and takes all
/// triangles. Each round deletes every edge with a closure violation and all
/// triangles through it. A union of g-closed families is g-closed, so the
/// surviving family contains every g-closed family of the candidate, and
/// `None` means no certificate exists for this base.
pub fn certify_sp_complete(base: &SignedGraph, g: u64) -> Result<Option<Certificate>> {
    if !is_g_wide(base, g)? {
        return Err(Error::NotWide(g));
    }
    if is_seed(base, g) {
        return Ok(Some(if g == 1 {
            Certificate::negative_loop_seed()
        } else {
            Certificate::digon_seed()
        }));
    }
    if g < 2 {
        return Ok(None);
    }
    let pairs = negative_cycle_pairs(base, g)?;
    let full = build_girth_transformed_distance_graph(base, &pairs, g)?;
    let mut triangles = all_triangles(&full);
    loop {
        let tset = TriangleSet::new(full.clone(), triangles.iter().copied())?;
        let violations = closure_violations(&tset, g)?;
        if violations.is_empty() {
            break;
        }
        let doomed: HashSet<(usize, usize)> = violations.iter().map(|v| (v.x, v.y)).collect();
        triangles.retain(|t| {
            !(doomed.contains(&(t[0], t[1]))
                || doomed.contains(&(t[0], t[2]))
                || doomed.contains(&(t[1], t[2])))
        });
    }
    if triangles.is_empty() {
        return Ok(None);
    }
    let tset = TriangleSet::new(full.clone(), triangles.iter().copied())?;
    let kept = tset.edge_set();
    let dist = WeightedSignedGraph::new(
        base.n(),
        kept.iter().map(|&(u, v)| (u, v, full.weight(u, v).unwrap())),
    )?;
    Certificate::new(base.clone(), g, dist, triangles).map(Some)
}

/// Lifts a certificate for `(B, g)` to one for `(EDC(B), g + 1)`.
///
/// Rungs get weight `g`; each distance edge `uv` of weight `w` gives straight
/// edges of weight `w` and crossing edges of weight `g − w`; every triangle of
/// the lifted graph is kept. The result is revalidated in full and any failure
/// is reported as [`Error::Verification`].
pub fn lift_certificate(c: &Certificate) -> Result<Certificate> {
    let g = c.g as i64;
    let n = c.base.n();
    let mut edges = Vec::with_capacity(n + 4 * c.dist_graph.edges().len());
    for v in 0..n {
        edges.push((cover_vertex(v, false), cover_vertex(v, true), g));
    }
    for e in c.dist_graph.edges() {
        for side in [false, true] {
            edges.push((cover_vertex(e.u, side), cover_vertex(e.v, side), e.w));
            edges.push((cover_vertex(e.u, side), cover_vertex(e.v, !side), g - e.w));
        }
    }
    let fail = |e: Error| Error::Verification(format!("lifted certificate: {e}"));
    let lifted = WeightedSignedGraph::new(2 * n, edges).map_err(fail)?;
    let triangles = all_triangles(&lifted);
    Certificate::new(edc(&c.base), c.g + 1, lifted, triangles).map_err(fail)
}

/// The algebraic distances `[ad(x⁺,y⁺), ad(x⁺,y⁻)]` in the cover predicted from
/// `p = ad(x, y)` for a g-wide base where `x, y` share a negative g-cycle.
/// By symmetry `ad(x⁻,y⁻)` and `ad(x⁻,y⁺)` equal the first and second entries.
pub fn predicted_cover_distances(p: i64, g: u64) -> [i64; 2] {
    let half = (g / 2) as i64;
    let ceil = g.div_ceil(2) as i64;
    let at_half = p.abs() == half;
    if p > 0 {
        [p, if at_half { ceil } else { -p - 1 }]
    } else {
        [if at_half { ceil } else { p - 1 }, -p]
    }
}
