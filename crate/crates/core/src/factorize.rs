//! Factoring an interfaced graph around a convex selection: the part before,
//! the selection itself, the part after, and the bypass wires, such that
//! recomposing `before ; (id_k * selection) ; after` rebuilds the host.

use thiserror::Error;

use crate::cospan::InterfacedGraph;
use crate::hypergraph::{EdgeId, GraphError, Hypergraph, NodeId, SubgraphSelection};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorizeError {
    #[error("host is not monogamous directed acyclic")]
    HostNotMda,
    #[error("selection is not convex")]
    SelectionNotConvex,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The three factors around a convex selection. Interface node lists are in
/// host ids; `before` has outputs `bypass ++ boundary_in`, the selection has
/// inputs `boundary_in` and outputs `boundary_out`, `after` has inputs
/// `bypass ++ boundary_out`.
#[derive(Debug, Clone)]
pub struct ConvexFactorization {
    pub before: InterfacedGraph,
    pub selection: InterfacedGraph,
    pub after: InterfacedGraph,
    pub boundary_in: Vec<NodeId>,
    pub boundary_out: Vec<NodeId>,
    pub bypass: Vec<NodeId>,
    pub before_to_host: Vec<NodeId>,
    pub selection_to_host: Vec<NodeId>,
    pub after_to_host: Vec<NodeId>,
}

impl ConvexFactorization {
    /// `before ; (id_k * selection) ; after`, which must be iso to the host.
    pub fn recompose(&self) -> InterfacedGraph {
        let k = self.bypass.len();
        let middle = InterfacedGraph::identity(k).tensor(&self.selection);
        self.before
            .compose(&middle)
            .and_then(|c| c.compose(&self.after))
            .expect("factor interfaces line up")
    }
}

/// Factor an MDA host around a convex selection: `before` is the smallest
/// part containing the host inputs and every edge outside the selection with
/// a path to it, `after` is the smallest part containing the outputs and the
/// remaining edges. Boundary node lists are ordered by ascending host id.
pub fn convex_factorize(
    host: &InterfacedGraph,
    sel: &SubgraphSelection,
) -> Result<ConvexFactorization, FactorizeError> {
    if !host.is_mda() {
        return Err(FactorizeError::HostNotMda);
    }
    sel.check_closed(&host.graph)?;
    if !host.graph.is_convex(sel)? {
        return Err(FactorizeError::SelectionNotConvex);
    }

    let g = &host.graph;
    // Edges outside the selection from which the selection is reachable.
    let (_, into_sel) = g.backward_reach(&sel.nodes);
    let before_edges: Vec<EdgeId> = (0..g.edge_count())
        .filter(|k| into_sel[*k] && !sel.edges.contains(k))
        .collect();
    let after_edges: Vec<EdgeId> = (0..g.edge_count())
        .filter(|k| !into_sel[*k] && !sel.edges.contains(k))
        .collect();

    let mut before_nodes = node_set(g, &before_edges);
    for &v in &host.inputs {
        before_nodes[v] = true;
    }
    let mut after_nodes = node_set(g, &after_edges);
    for &v in &host.outputs {
        after_nodes[v] = true;
    }
    let in_sel = {
        let mut m = vec![false; g.node_count()];
        for &v in &sel.nodes {
            m[v] = true;
        }
        m
    };

    let boundary_in: Vec<NodeId> = g
        .nodes()
        .filter(|&v| before_nodes[v] && in_sel[v])
        .collect();
    let boundary_out: Vec<NodeId> = g
        .nodes()
        .filter(|&v| after_nodes[v] && in_sel[v])
        .collect();
    let bypass: Vec<NodeId> = g
        .nodes()
        .filter(|&v| before_nodes[v] && after_nodes[v] && !in_sel[v])
        .collect();

    let mut before_iface = bypass.clone();
    before_iface.extend(&boundary_in);
    let (before, before_to_host) = extract(
        g,
        &before_nodes,
        &before_edges,
        &host.inputs,
        &before_iface,
    );

    let sel_nodes_mask = in_sel.clone();
    let sel_edges: Vec<EdgeId> = sel.edges.iter().copied().collect();
    let (selection, selection_to_host) =
        extract(g, &sel_nodes_mask, &sel_edges, &boundary_in, &boundary_out);

    let mut after_iface = bypass.clone();
    after_iface.extend(&boundary_out);
    let (after, after_to_host) =
        extract(g, &after_nodes, &after_edges, &after_iface, &host.outputs);

    Ok(ConvexFactorization {
        before,
        selection,
        after,
        boundary_in,
        boundary_out,
        bypass,
        before_to_host,
        selection_to_host,
        after_to_host,
    })
}

fn node_set(g: &Hypergraph, edges: &[EdgeId]) -> Vec<bool> {
    let mut m = vec![false; g.node_count()];
    for &k in edges {
        let e = &g.edges()[k];
        for &v in e.sources.iter().chain(e.targets.iter()) {
            m[v] = true;
        }
    }
    m
}

/// Build the sub-cospan on the masked nodes and listed edges, renumbering
/// host ids to dense local ids in ascending order. Returns the local graph
/// and the local-to-host id table.
fn extract(
    g: &Hypergraph,
    nodes: &[bool],
    edges: &[EdgeId],
    inputs: &[NodeId],
    outputs: &[NodeId],
) -> (InterfacedGraph, Vec<NodeId>) {
    let to_host: Vec<NodeId> = (0..g.node_count()).filter(|&v| nodes[v]).collect();
    let mut to_local = vec![usize::MAX; g.node_count()];
    for (local, &host) in to_host.iter().enumerate() {
        to_local[host] = local;
    }
    let mut sub = Hypergraph::discrete(to_host.len());
    for &k in edges {
        let e = &g.edges()[k];
        sub.add_edge(
            e.label.clone(),
            e.sources.iter().map(|&v| to_local[v]).collect(),
            e.targets.iter().map(|&v| to_local[v]).collect(),
        )
        .expect("extracted endpoints in range");
    }
    let part = InterfacedGraph::new(
        sub,
        inputs.iter().map(|&v| to_local[v]).collect(),
        outputs.iter().map(|&v| to_local[v]).collect(),
    )
    .expect("extracted interface in range");
    (part, to_host)
}
