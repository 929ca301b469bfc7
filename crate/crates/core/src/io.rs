//! JSON and DOT export of crystal graphs and perfect crystals.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cartan::{Color, RootSystemType, WeightVector};
use crate::crystal::{CrystalGraph, CrystalNode, Edge, NodeRecord};
use crate::error::{CrystalError, Result};
use crate::perfect::PerfectCrystal;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub id: String,
    /// `[color, slot, exponent]` triples.
    pub exponents: Vec<(Color, i32, i64)>,
    pub depth: usize,
    pub eps: Vec<i64>,
    pub phi: Vec<i64>,
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub src: String,
    pub color: Color,
    pub dst: String,
}

/// The on-disk graph format. Perfect crystals leave `weight`,
/// `depth_limit` and `highest` null.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    #[serde(rename = "type")]
    pub ty: RootSystemType,
    pub weight: Option<Vec<i64>>,
    pub depth_limit: Option<usize>,
    pub nodes: Vec<NodeDoc>,
    pub edges: Vec<EdgeDoc>,
    pub highest: Option<String>,
}

impl GraphDoc {
    pub fn from_graph(graph: &CrystalGraph) -> Self {
        let t = graph.root_system();
        let nodes = graph
            .nodes()
            .iter()
            .map(|r| NodeDoc {
                id: r.id.clone(),
                exponents: r.node.exponents(),
                depth: r.depth(),
                eps: r.eps.clone(),
                phi: r.phi.clone(),
                interior: r.interior,
            })
            .collect();
        let edges = graph
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                src: graph.node(e.src).id.clone(),
                color: e.color,
                dst: graph.node(e.dst).id.clone(),
            })
            .collect();
        Self {
            ty: t,
            weight: Some(graph.weight().to_dense(t)),
            depth_limit: Some(graph.depth_limit()),
            nodes,
            edges,
            highest: Some(graph.node(graph.highest()).id.clone()),
        }
    }

    pub fn from_perfect(pc: &PerfectCrystal) -> Self {
        let t = pc.root_system();
        let nodes = (0..pc.len())
            .map(|b| NodeDoc {
                id: pc.node_id(b),
                exponents: Vec::new(),
                depth: 0,
                eps: t.colors().into_iter().map(|c| pc.eps(b, c)).collect(),
                phi: t.colors().into_iter().map(|c| pc.phi(b, c)).collect(),
                interior: true,
            })
            .collect();
        let edges = pc
            .arrows()
            .iter()
            .map(|&(s, c, d)| EdgeDoc {
                src: pc.node_id(s),
                color: c,
                dst: pc.node_id(d),
            })
            .collect();
        Self {
            ty: t,
            weight: None,
            depth_limit: None,
            nodes,
            edges,
            highest: None,
        }
    }

    /// Rebuild a crystal graph. Stored `ε`, `φ` and arrows are taken as
    /// given, so a corrupted document loads and can then be checked.
    pub fn to_graph(&self) -> Result<CrystalGraph> {
        let t = self.ty;
        let weight = self
            .weight
            .as_ref()
            .ok_or_else(|| CrystalError::MalformedGraph("missing weight".into()))?;
        let weight = WeightVector::from_dense(t, weight)?;
        let depth_limit = self
            .depth_limit
            .ok_or_else(|| CrystalError::MalformedGraph("missing depth_limit".into()))?;
        let highest = self
            .highest
            .as_ref()
            .ok_or_else(|| CrystalError::MalformedGraph("missing highest".into()))?;
        if self.nodes.first().map(|n| &n.id) != Some(highest) {
            return Err(CrystalError::MalformedGraph("highest node must come first".into()));
        }
        let mut index = HashMap::new();
        let mut records = Vec::with_capacity(self.nodes.len());
        for (i, n) in self.nodes.iter().enumerate() {
            let node = CrystalNode::from_exponents(n.exponents.iter().copied(), n.depth);
            if node.id() != n.id {
                return Err(CrystalError::MalformedGraph(format!("id {} does not match its exponents", n.id)));
            }
            index.insert(n.id.clone(), i);
            records.push(NodeRecord {
                node,
                id: n.id.clone(),
                eps: n.eps.clone(),
                phi: n.phi.clone(),
                interior: n.interior,
            });
        }
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| CrystalError::NodeNotInGraph(id.to_string()))
        };
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(Edge {
                    src: lookup(&e.src)?,
                    color: e.color,
                    dst: lookup(&e.dst)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CrystalGraph::from_parts(t, weight, depth_limit, records, edges)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("graph documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn graph_to_json(graph: &CrystalGraph) -> String {
    GraphDoc::from_graph(graph).to_json()
}

pub fn graph_from_json(text: &str) -> Result<CrystalGraph> {
    GraphDoc::from_json(text)?.to_graph()
}

/// DOT for a graph document: one edge per arrow labeled by its color, the
/// highest node drawn as a double circle.
pub fn doc_to_dot(doc: &GraphDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", doc.ty);
    for n in &doc.nodes {
        if doc.highest.as_deref() == Some(n.id.as_str()) {
            let _ = writeln!(out, "  \"{}\" [shape=doublecircle];", n.id);
        } else {
            let _ = writeln!(out, "  \"{}\";", n.id);
        }
    }
    for e in &doc.edges {
        let _ = writeln!(out, "  \"{}\" -> \"{}\" [label={}];", e.src, e.dst, e.color);
    }
    out.push_str("}\n");
    out
}
