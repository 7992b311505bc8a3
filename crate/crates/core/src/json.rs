//! The graph exchange format: a UTF-8 JSON document
//! `{"nodes": n, "edges": [{"label", "sources", "targets"}...],
//!   "inputs": [...], "outputs": [...]}`.
//! The interface arrays default to empty, so plain hypergraphs are also
//! accepted.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cospan::InterfacedGraph;
use crate::hypergraph::{GraphError, Hypergraph};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid graph JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDoc {
    pub nodes: usize,
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub inputs: Vec<usize>,
    #[serde(default)]
    pub outputs: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub label: String,
    pub sources: Vec<usize>,
    pub targets: Vec<usize>,
}

impl From<&InterfacedGraph> for GraphDoc {
    fn from(c: &InterfacedGraph) -> Self {
        GraphDoc {
            nodes: c.graph.node_count(),
            edges: c
                .graph
                .edges()
                .iter()
                .map(|e| EdgeDoc {
                    label: e.label.clone(),
                    sources: e.sources.clone(),
                    targets: e.targets.clone(),
                })
                .collect(),
            inputs: c.inputs.clone(),
            outputs: c.outputs.clone(),
        }
    }
}

impl TryFrom<GraphDoc> for InterfacedGraph {
    type Error = GraphError;

    fn try_from(doc: GraphDoc) -> Result<Self, GraphError> {
        let mut g = Hypergraph::discrete(doc.nodes);
        for e in doc.edges {
            g.add_edge(e.label, e.sources, e.targets)?;
        }
        InterfacedGraph::new(g, doc.inputs, doc.outputs)
    }
}

pub fn to_json(c: &InterfacedGraph) -> String {
    let mut s = serde_json::to_string_pretty(&GraphDoc::from(c)).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<InterfacedGraph, JsonError> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    Ok(InterfacedGraph::try_from(doc)?)
}
