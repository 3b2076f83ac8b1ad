//! JSON and Graphviz formats.
//!
//! Signed graph: `{"n": 4, "edges": [[0, 1, "+"], [3, 0, "-"]], "name": "C-4"}`.
//! Weighted graph: `{"n": 3, "edges": [[0, 1, 2], [1, 2, -1]]}`.
//! Certificate: `{"g": 5, "base": <signed graph>, "dist_edges": [[u, v, w]], "triangles": [[x, y, z]]}`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::distance::Certificate;
use crate::error::{Error, Result};
use crate::signed::{Sign, SignedGraph};
use crate::weighted::WeightedSignedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedGraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize, Sign)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl From<&SignedGraph> for SignedGraphJson {
    fn from(g: &SignedGraph) -> Self {
        SignedGraphJson {
            n: g.n(),
            edges: g.edges().iter().map(|e| (e.u, e.v, e.sign)).collect(),
            name: g.name().map(str::to_owned),
        }
    }
}

impl TryFrom<SignedGraphJson> for SignedGraph {
    type Error = Error;

    fn try_from(j: SignedGraphJson) -> Result<Self> {
        let g = SignedGraph::new(j.n, j.edges)?;
        Ok(match j.name {
            Some(name) => g.with_name(name),
            None => g,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedGraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize, i64)>,
}

impl From<&WeightedSignedGraph> for WeightedGraphJson {
    fn from(g: &WeightedSignedGraph) -> Self {
        WeightedGraphJson {
            n: g.n(),
            edges: g.edges().iter().map(|e| (e.u, e.v, e.w)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub g: u64,
    pub base: SignedGraphJson,
    pub dist_edges: Vec<(usize, usize, i64)>,
    pub triangles: Vec<[usize; 3]>,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        let mut dist_edges: Vec<_> = c.dist_graph.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
        dist_edges.sort_unstable();
        CertificateJson {
            g: c.g,
            base: (&c.base).into(),
            dist_edges,
            triangles: c.tset.triangles().iter().copied().collect(),
        }
    }
}

impl TryFrom<CertificateJson> for Certificate {
    type Error = Error;

    /// Rebuilds and fully revalidates the certificate.
    fn try_from(j: CertificateJson) -> Result<Self> {
        let base = SignedGraph::try_from(j.base)?;
        let dist = WeightedSignedGraph::new(base.n(), j.dist_edges)?;
        Certificate::new(base, j.g, dist, j.triangles)
    }
}

fn parse<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn signed_graph_from_json(s: &str) -> Result<SignedGraph> {
    parse::<SignedGraphJson>(s)?.try_into()
}

pub fn signed_graph_to_json(g: &SignedGraph) -> String {
    serde_json::to_string(&SignedGraphJson::from(g)).expect("serializable")
}

pub fn weighted_graph_from_json(s: &str) -> Result<WeightedSignedGraph> {
    let j: WeightedGraphJson = parse(s)?;
    WeightedSignedGraph::new(j.n, j.edges)
}

pub fn weighted_graph_to_json(g: &WeightedSignedGraph) -> String {
    serde_json::to_string(&WeightedGraphJson::from(g)).expect("serializable")
}

pub fn certificate_from_json(s: &str) -> Result<Certificate> {
    parse::<CertificateJson>(s)?.try_into()
}

pub fn certificate_to_json(c: &Certificate) -> String {
    serde_json::to_string(&CertificateJson::from(c)).expect("serializable")
}

/// Undirected DOT; negative edges are dashed and red.
pub fn signed_graph_to_dot(g: &SignedGraph) -> String {
    let mut out = String::new();
    let name = g.name().unwrap_or("G").replace('"', "'");
    writeln!(out, "graph \"{name}\" {{").unwrap();
    for v in 0..g.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for e in g.edges() {
        let style = match e.sign {
            Sign::Positive => "",
            Sign::Negative => " [style=dashed, color=red]",
        };
        writeln!(out, "  {} -- {}{style};", e.u, e.v).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Undirected DOT with weights as labels; negative weights are dashed and red.
pub fn weighted_graph_to_dot(g: &WeightedSignedGraph) -> String {
    let mut out = String::from("graph \"W\" {\n");
    for v in 0..g.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for e in g.edges() {
        let style = if e.w < 0 { ", style=dashed, color=red" } else { "" };
        writeln!(out, "  {} -- {} [label=\"{}\"{style}];", e.u, e.v, e.w).unwrap();
    }
    out.push_str("}\n");
    out
}
