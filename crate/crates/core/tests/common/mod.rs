#![allow(dead_code)]

//! Shared oracles for the integration suites. Everything here is written
//! against the definitions directly, independent of the engine's own
//! algorithms, so the two can be compared.

use std::collections::BTreeSet;

use diagram_rewriter::cospan::InterfacedGraph;
use diagram_rewriter::hypergraph::{EdgeId, Hypergraph, NodeId};

/// Exhaustively count walks in the node/edge incidence digraph from a seed
/// vertex set to a sink vertex set. Walks alternate nodes and hyperedges;
/// parallel incidences (a node appearing twice among an edge's sources)
/// count as distinct steps. The graph must be acyclic.
pub fn count_walks_by_enumeration(
    g: &Hypergraph,
    seed_nodes: &[bool],
    seed_edges: &[bool],
    sink_nodes: &[bool],
    sink_edges: &[bool],
) -> u128 {
    let n = g.node_count();
    let mut total = 0u128;
    let mut stack: Vec<usize> = Vec::new();
    for (v, &seeded) in seed_nodes.iter().enumerate() {
        if seeded {
            stack.push(v);
        }
    }
    for (k, &seeded) in seed_edges.iter().enumerate() {
        if seeded {
            stack.push(n + k);
        }
    }
    for start in stack {
        total += walks_from(g, start, sink_nodes, sink_edges);
    }
    total
}

fn walks_from(g: &Hypergraph, vertex: usize, sink_nodes: &[bool], sink_edges: &[bool]) -> u128 {
    let n = g.node_count();
    let mut count = 0u128;
    if vertex < n {
        if sink_nodes[vertex] {
            count += 1;
        }
        for (k, e) in g.edges().iter().enumerate() {
            for &s in &e.sources {
                if s == vertex {
                    count += walks_from(g, n + k, sink_nodes, sink_edges);
                }
            }
        }
    } else {
        let k = vertex - n;
        if sink_edges[k] {
            count += 1;
        }
        for &t in &g.edges()[k].targets {
            count += walks_from(g, t, sink_nodes, sink_edges);
        }
    }
    count
}

/// Convexity by path enumeration: walk every directed edge-path starting at
/// a selection node and record whether some outside edge can be continued
/// back into the selection. Only sound on acyclic graphs, where paths
/// cannot repeat edges.
pub fn convex_by_path_enumeration(
    g: &Hypergraph,
    nodes: &BTreeSet<NodeId>,
    edges: &BTreeSet<EdgeId>,
) -> bool {
    // For each path from a selection node, if it reaches a selection node
    // again, every edge along the way must be selected.
    for &v in nodes {
        let mut prefix: Vec<EdgeId> = Vec::new();
        if !paths_ok(g, v, nodes, edges, &mut prefix) {
            return false;
        }
    }
    true
}

fn paths_ok(
    g: &Hypergraph,
    at: NodeId,
    nodes: &BTreeSet<NodeId>,
    edges: &BTreeSet<EdgeId>,
    prefix: &mut Vec<EdgeId>,
) -> bool {
    if !prefix.is_empty() && nodes.contains(&at) && prefix.iter().any(|k| !edges.contains(k)) {
        return false;
    }
    for (k, e) in g.edges().iter().enumerate() {
        if e.sources.contains(&at) {
            for &t in &e.targets {
                prefix.push(k);
                let ok = paths_ok(g, t, nodes, edges, prefix);
                prefix.pop();
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Keep one representative per isomorphism class, preserving first
/// occurrence order.
pub fn dedupe_by_iso(outcomes: Vec<InterfacedGraph>) -> Vec<InterfacedGraph> {
    let mut classes: Vec<InterfacedGraph> = Vec::new();
    for g in outcomes {
        if !classes.iter().any(|c| c.iso_to(&g)) {
            classes.push(g);
        }
    }
    classes
}

/// Brute-force context search: all cospans `c` with `l ; c` isomorphic to
/// `host`, for a ground left side `l : 0 -> j`. Contexts are rebuilt from
/// first principles: an edge embedding of `l` into the host, a fiber of
/// context nodes over each host node, endpoint and leg assignments, then a
/// final check by composition. Returns one representative per class.
pub fn ground_contexts(l: &InterfacedGraph, host: &InterfacedGraph) -> Vec<InterfacedGraph> {
    assert!(l.inputs.is_empty(), "ground rules have no inputs");
    let mut found: Vec<InterfacedGraph> = Vec::new();
    for embedding in edge_embeddings(&l.graph, &host.graph) {
        // Forced node correspondence of the embedding.
        let mut node_map = vec![usize::MAX; l.graph.node_count()];
        let mut consistent = true;
        for (le, &he) in embedding.iter().enumerate() {
            let ledge = &l.graph.edges()[le];
            let hedge = &host.graph.edges()[he];
            for (a, b) in ledge
                .sources
                .iter()
                .zip(&hedge.sources)
                .chain(ledge.targets.iter().zip(&hedge.targets))
            {
                if node_map[*a] != usize::MAX && node_map[*a] != *b {
                    consistent = false;
                }
                node_map[*a] = *b;
            }
        }
        if !consistent {
            continue;
        }
        // Interface nodes of l may be unconstrained (isolated in l); try
        // every completion.
        let free: Vec<usize> = (0..l.graph.node_count())
            .filter(|&v| node_map[v] == usize::MAX)
            .collect();
        let mut completions = vec![node_map.clone()];
        for &v in &free {
            let mut next = Vec::new();
            for base in completions {
                for w in 0..host.graph.node_count() {
                    let mut m = base.clone();
                    m[v] = w;
                    next.push(m);
                }
            }
            completions = next;
        }
        for node_map in completions {
            collect_contexts(l, host, &embedding, &node_map, &mut found);
        }
    }
    dedupe_by_iso(found)
}

/// All injective label-preserving maps from `l`'s edges to `host`'s edges.
fn edge_embeddings(l: &Hypergraph, host: &Hypergraph) -> Vec<Vec<EdgeId>> {
    fn go(
        l: &Hypergraph,
        host: &Hypergraph,
        depth: usize,
        used: &mut Vec<bool>,
        current: &mut Vec<EdgeId>,
        out: &mut Vec<Vec<EdgeId>>,
    ) {
        if depth == l.edge_count() {
            out.push(current.clone());
            return;
        }
        for k in 0..host.edge_count() {
            if !used[k] && host.edges()[k].label == l.edges()[depth].label {
                used[k] = true;
                current.push(k);
                go(l, host, depth + 1, used, current, out);
                current.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(
        l,
        host,
        0,
        &mut vec![false; host.edge_count()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

fn collect_contexts(
    l: &InterfacedGraph,
    host: &InterfacedGraph,
    embedding: &[EdgeId],
    node_map: &[NodeId],
    found: &mut Vec<InterfacedGraph>,
) {
    let hg = &host.graph;
    // Host nodes hit by l's boundary get a split fiber: one context node
    // per boundary occurrence; other host nodes keep a single copy unless
    // they are only internal to the match.
    let mut boundary_slots: Vec<Vec<usize>> = vec![Vec::new(); hg.node_count()];
    for (slot, &lv) in l.outputs.iter().enumerate() {
        boundary_slots[node_map[lv]].push(slot);
    }
    let mut internal_only = vec![false; hg.node_count()];
    for (lv, &hv) in node_map.iter().enumerate() {
        if !l.outputs.contains(&lv) {
            internal_only[hv] = true;
        }
    }
    for &lv in &l.outputs {
        internal_only[node_map[lv]] = false;
    }

    // Context nodes: one per boundary slot, then untouched host nodes.
    let mut ctx_of_slot = vec![usize::MAX; l.outputs.len()];
    let mut ctx_of_host = vec![usize::MAX; hg.node_count()];
    let mut count = 0;
    for v in 0..hg.node_count() {
        for &slot in &boundary_slots[v] {
            ctx_of_slot[slot] = count;
            count += 1;
        }
        if boundary_slots[v].is_empty() && !internal_only[v] {
            ctx_of_host[v] = count;
            count += 1;
        }
    }
    let embedded: BTreeSet<EdgeId> = embedding.iter().copied().collect();
    let residual: Vec<EdgeId> = (0..hg.edge_count())
        .filter(|k| !embedded.contains(k))
        .collect();

    // Candidate context nodes for a host node: its untouched copy or any
    // boundary slot copy.
    let candidates = |v: NodeId| -> Vec<usize> {
        let mut cs = Vec::new();
        if ctx_of_host[v] != usize::MAX {
            cs.push(ctx_of_host[v]);
        }
        for &slot in &boundary_slots[v] {
            cs.push(ctx_of_slot[slot]);
        }
        cs
    };

    // Every endpoint of every residual edge picks a copy; so does every
    // interface position.
    let mut slots: Vec<Vec<usize>> = Vec::new();
    for &k in &residual {
        let e = &hg.edges()[k];
        for &v in e.sources.iter().chain(e.targets.iter()) {
            slots.push(candidates(v));
        }
    }
    for s in 0..l.outputs.len() {
        slots.push(candidates(node_map[l.outputs[s]]));
    }
    for &v in host.outputs.iter() {
        slots.push(candidates(v));
    }
    if slots.iter().any(|c| c.is_empty()) {
        return;
    }

    let mut assignment = vec![0usize; slots.len()];
    enumerate(&slots, 0, &mut assignment, &mut |assignment| {
        let mut g = Hypergraph::discrete(count);
        let mut pos = 0;
        for &k in &residual {
            let e = &hg.edges()[k];
            let sources: Vec<usize> = e.sources.iter().map(|_| {
                let v = assignment[pos];
                pos += 1;
                v
            }).collect();
            let targets: Vec<usize> = e.targets.iter().map(|_| {
                let v = assignment[pos];
                pos += 1;
                v
            }).collect();
            g.add_edge(e.label.clone(), sources, targets).unwrap();
        }
        let inputs: Vec<usize> = (0..l.outputs.len()).map(|_| {
            let v = assignment[pos];
            pos += 1;
            v
        }).collect();
        let outputs: Vec<usize> = host.outputs.iter().map(|_| {
            let v = assignment[pos];
            pos += 1;
            v
        }).collect();
        let Ok(context) = InterfacedGraph::new(g, inputs, outputs) else {
            return;
        };
        // Slot copies the assignment never used would survive as spurious
        // extra nodes; dropping them realizes contexts with smaller fibers.
        let context = prune_unreferenced(&context);
        let Ok(recomposed) = l.compose(&context) else {
            return;
        };
        if recomposed.iso_to(host) && !found.iter().any(|c| c.iso_to(&context)) {
            found.push(context.clone());
        }
    });
}

fn prune_unreferenced(c: &InterfacedGraph) -> InterfacedGraph {
    let n = c.graph.node_count();
    let mut used = vec![false; n];
    for e in c.graph.edges() {
        for &v in e.sources.iter().chain(e.targets.iter()) {
            used[v] = true;
        }
    }
    for &v in c.inputs.iter().chain(c.outputs.iter()) {
        used[v] = true;
    }
    let mut renumber = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        if used[v] {
            renumber[v] = count;
            count += 1;
        }
    }
    let mut g = Hypergraph::discrete(count);
    for e in c.graph.edges() {
        g.add_edge(
            e.label.clone(),
            e.sources.iter().map(|&v| renumber[v]).collect(),
            e.targets.iter().map(|&v| renumber[v]).collect(),
        )
        .unwrap();
    }
    InterfacedGraph::new(
        g,
        c.inputs.iter().map(|&v| renumber[v]).collect(),
        c.outputs.iter().map(|&v| renumber[v]).collect(),
    )
    .unwrap()
}

fn enumerate(
    slots: &[Vec<usize>],
    depth: usize,
    assignment: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if depth == slots.len() {
        emit(assignment);
        return;
    }
    for &c in &slots[depth] {
        assignment[depth] = c;
        enumerate(slots, depth + 1, assignment, emit);
    }
}
