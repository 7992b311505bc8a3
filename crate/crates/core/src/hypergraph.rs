//! Directed hypergraphs with labelled hyperedges, and the combinatorial
//! operations the rewriting engine is built from: degrees, directed paths,
//! acyclicity, convex sub-hypergraphs, homomorphism enumeration, isomorphism
//! and pushouts along discrete apexes.
//!
//! Nodes and hyperedges are dense integer ids local to each graph; every
//! cross-graph relation is carried by an explicit [`Homomorphism`]. Equality
//! of graphs "as diagrams" is always equality up to isomorphism.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::signature::Signature;

pub type NodeId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("node id {node} out of range (node count {node_count})")]
    InvalidNode { node: NodeId, node_count: usize },
    #[error("edge id {edge} out of range (edge count {edge_count})")]
    InvalidEdge { edge: EdgeId, edge_count: usize },
    #[error("selection is not closed: edge {edge} has an endpoint outside the selected nodes")]
    SelectionNotClosed { edge: EdgeId },
    #[error("edge `{label}` has {got} {side}s but the signature requires {want}")]
    ArityMismatch {
        label: String,
        side: &'static str,
        got: usize,
        want: usize,
    },
    #[error(transparent)]
    Signature(#[from] crate::signature::SignatureError),
}

/// A hyperedge with an ordered list of source nodes and target nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperedge {
    pub label: String,
    pub sources: Vec<NodeId>,
    pub targets: Vec<NodeId>,
}

impl Hyperedge {
    pub fn new(
        label: impl Into<String>,
        sources: Vec<NodeId>,
        targets: Vec<NodeId>,
    ) -> Self {
        Hyperedge {
            label: label.into(),
            sources,
            targets,
        }
    }

    fn endpoints(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.sources.iter().chain(self.targets.iter()).copied()
    }
}

/// A finite directed hypergraph. Nodes are the ids `0..node_count()`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    node_count: usize,
    edges: Vec<Hyperedge>,
}

impl Hypergraph {
    pub fn new(node_count: usize, edges: Vec<Hyperedge>) -> Result<Self, GraphError> {
        let g = Hypergraph { node_count, edges };
        for e in &g.edges {
            for v in e.endpoints() {
                g.check_node(v)?;
            }
        }
        Ok(g)
    }

    /// The discrete hypergraph on `n` nodes.
    pub fn discrete(n: usize) -> Self {
        Hypergraph {
            node_count: n,
            edges: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Result<&Hyperedge, GraphError> {
        self.edges.get(e).ok_or(GraphError::InvalidEdge {
            edge: e,
            edge_count: self.edges.len(),
        })
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        0..self.node_count
    }

    pub fn add_node(&mut self) -> NodeId {
        self.node_count += 1;
        self.node_count - 1
    }

    pub fn add_edge(
        &mut self,
        label: impl Into<String>,
        sources: Vec<NodeId>,
        targets: Vec<NodeId>,
    ) -> Result<EdgeId, GraphError> {
        let e = Hyperedge::new(label, sources, targets);
        for v in e.endpoints() {
            self.check_node(v)?;
        }
        self.edges.push(e);
        Ok(self.edges.len() - 1)
    }

    fn check_node(&self, v: NodeId) -> Result<(), GraphError> {
        if v < self.node_count {
            Ok(())
        } else {
            Err(GraphError::InvalidNode {
                node: v,
                node_count: self.node_count,
            })
        }
    }

    /// Check that every edge label exists in `sig` and carries the right
    /// number of sources and targets.
    pub fn validate_against(&self, sig: &Signature) -> Result<(), GraphError> {
        for e in &self.edges {
            let (arity, coarity) = sig.arity(&e.label)?;
            if e.sources.len() != arity {
                return Err(GraphError::ArityMismatch {
                    label: e.label.clone(),
                    side: "source",
                    got: e.sources.len(),
                    want: arity,
                });
            }
            if e.targets.len() != coarity {
                return Err(GraphError::ArityMismatch {
                    label: e.label.clone(),
                    side: "target",
                    got: e.targets.len(),
                    want: coarity,
                });
            }
        }
        Ok(())
    }

    /// `(indegree, outdegree)` of `v`: the number of (edge, position) pairs
    /// with `v` as that target (resp. source) position.
    pub fn degrees(&self, v: NodeId) -> Result<(usize, usize), GraphError> {
        self.check_node(v)?;
        Ok(self.all_degrees()[v])
    }

    /// Degrees of every node in one pass.
    pub fn all_degrees(&self) -> Vec<(usize, usize)> {
        let mut deg = vec![(0, 0); self.node_count];
        for e in &self.edges {
            for &v in &e.targets {
                deg[v].0 += 1;
            }
            for &v in &e.sources {
                deg[v].1 += 1;
            }
        }
        deg
    }

    /// Edge ids whose source list contains `v`.
    pub fn out_edges(&self, v: NodeId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.sources.contains(&v))
            .map(|(k, _)| k)
    }

    /// Edge ids whose target list contains `v`.
    pub fn in_edges(&self, v: NodeId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.targets.contains(&v))
            .map(|(k, _)| k)
    }

    /// Nodes and edges forward-reachable from `start`: an edge is reached
    /// when one of its sources is, a node when it is a target of a reached
    /// edge.
    pub fn forward_reach(&self, start: &BTreeSet<NodeId>) -> (Vec<bool>, Vec<bool>) {
        let mut node_seen = vec![false; self.node_count];
        let mut edge_seen = vec![false; self.edges.len()];
        let mut queue: VecDeque<NodeId> = VecDeque::new();
        for &v in start {
            if v < self.node_count && !node_seen[v] {
                node_seen[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for (k, e) in self.edges.iter().enumerate() {
                if !edge_seen[k] && e.sources.contains(&v) {
                    edge_seen[k] = true;
                    for &t in &e.targets {
                        if !node_seen[t] {
                            node_seen[t] = true;
                            queue.push_back(t);
                        }
                    }
                }
            }
        }
        (node_seen, edge_seen)
    }

    /// Mirror image of [`Hypergraph::forward_reach`].
    pub fn backward_reach(&self, start: &BTreeSet<NodeId>) -> (Vec<bool>, Vec<bool>) {
        let mut node_seen = vec![false; self.node_count];
        let mut edge_seen = vec![false; self.edges.len()];
        let mut queue: VecDeque<NodeId> = VecDeque::new();
        for &v in start {
            if v < self.node_count && !node_seen[v] {
                node_seen[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for (k, e) in self.edges.iter().enumerate() {
                if !edge_seen[k] && e.targets.contains(&v) {
                    edge_seen[k] = true;
                    for &s in &e.sources {
                        if !node_seen[s] {
                            node_seen[s] = true;
                            queue.push_back(s);
                        }
                    }
                }
            }
        }
        (node_seen, edge_seen)
    }

    /// Is there a directed path (at least one hyperedge long) from some node
    /// in `from` to some node in `to`?
    pub fn has_path(&self, from: &BTreeSet<NodeId>, to: &BTreeSet<NodeId>) -> Result<bool, GraphError> {
        for &v in from.iter().chain(to.iter()) {
            self.check_node(v)?;
        }
        let (_, edge_seen) = self.forward_reach(from);
        Ok(self
            .edges
            .iter()
            .enumerate()
            .any(|(k, e)| edge_seen[k] && e.targets.iter().any(|t| to.contains(t))))
    }

    /// No directed path from a node to itself.
    pub fn is_acyclic(&self) -> bool {
        // Cycle detection on the bipartite digraph of nodes and edges.
        // Vertices 0..n are nodes, n..n+m are edges.
        let n = self.node_count;
        let m = self.edges.len();
        let mut state = vec![0u8; n + m]; // 0 unvisited, 1 on stack, 2 done
        let succ = |x: usize| -> Vec<usize> {
            if x < n {
                self.out_edges(x).map(|k| n + k).collect()
            } else {
                self.edges[x - n].targets.to_vec()
            }
        };
        for root in 0..n + m {
            if state[root] != 0 {
                continue;
            }
            // Iterative DFS with an explicit stack.
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            state[root] = 1;
            while let Some(&mut (x, ref mut next)) = stack.last_mut() {
                let succs = succ(x);
                if *next < succs.len() {
                    let y = succs[*next];
                    *next += 1;
                    match state[y] {
                        0 => {
                            state[y] = 1;
                            stack.push((y, 0));
                        }
                        1 => return false,
                        _ => {}
                    }
                } else {
                    state[x] = 2;
                    stack.pop();
                }
            }
        }
        true
    }

    /// Convexity of a selection: no edge outside it lies on a directed path
    /// between two of its nodes. Checked by intersecting forward and
    /// backward reachability from the selected nodes.
    pub fn is_convex(&self, sel: &SubgraphSelection) -> Result<bool, GraphError> {
        sel.check_closed(self)?;
        let (_, fwd) = self.forward_reach(&sel.nodes);
        let (_, bwd) = self.backward_reach(&sel.nodes);
        Ok((0..self.edges.len())
            .all(|k| sel.edges.contains(&k) || !(fwd[k] && bwd[k])))
    }

    /// All homomorphisms from `self` into `host`, deterministically ordered.
    /// With `mono_only`, node and edge maps are both injective.
    pub fn homomorphisms_into(&self, host: &Hypergraph, mono_only: bool) -> Vec<Homomorphism> {
        HomSearch::new(self, host)
            .mono(mono_only)
            .run()
    }

    /// Some isomorphism `self -> other`, or `None`. Deterministic.
    pub fn isomorphic(&self, other: &Hypergraph) -> Option<Homomorphism> {
        if !iso_feasible(self, other) {
            return None;
        }
        HomSearch::new(self, other)
            .bijective()
            .first_only()
            .run()
            .pop()
    }
}

/// Cheap invariants that must agree for isomorphic graphs.
fn iso_feasible(a: &Hypergraph, b: &Hypergraph) -> bool {
    if a.node_count != b.node_count || a.edges.len() != b.edges.len() {
        return false;
    }
    let mut la: Vec<&str> = a.edges.iter().map(|e| e.label.as_str()).collect();
    let mut lb: Vec<&str> = b.edges.iter().map(|e| e.label.as_str()).collect();
    la.sort_unstable();
    lb.sort_unstable();
    if la != lb {
        return false;
    }
    let mut da = a.all_degrees();
    let mut db = b.all_degrees();
    da.sort_unstable();
    db.sort_unstable();
    da == db
}

/// A label- and incidence-preserving map of hypergraphs, stored as dense
/// per-id tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub node_map: Vec<NodeId>,
    pub edge_map: Vec<EdgeId>,
}

impl Homomorphism {
    pub fn identity(g: &Hypergraph) -> Self {
        Homomorphism {
            node_map: (0..g.node_count()).collect(),
            edge_map: (0..g.edge_count()).collect(),
        }
    }

    /// Pointwise structure preservation.
    pub fn verify(&self, dom: &Hypergraph, cod: &Hypergraph) -> bool {
        if self.node_map.len() != dom.node_count() || self.edge_map.len() != dom.edge_count() {
            return false;
        }
        if self.node_map.iter().any(|&w| w >= cod.node_count()) {
            return false;
        }
        for (k, e) in dom.edges().iter().enumerate() {
            let Some(image) = cod.edges().get(self.edge_map[k]) else {
                return false;
            };
            if image.label != e.label
                || image.sources.len() != e.sources.len()
                || image.targets.len() != e.targets.len()
            {
                return false;
            }
            for (p, &v) in e.sources.iter().enumerate() {
                if self.node_map[v] != image.sources[p] {
                    return false;
                }
            }
            for (p, &v) in e.targets.iter().enumerate() {
                if self.node_map[v] != image.targets[p] {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_mono(&self) -> bool {
        injective(&self.node_map) && injective(&self.edge_map)
    }

    pub fn compose(&self, then: &Homomorphism) -> Homomorphism {
        Homomorphism {
            node_map: self.node_map.iter().map(|&v| then.node_map[v]).collect(),
            edge_map: self.edge_map.iter().map(|&e| then.edge_map[e]).collect(),
        }
    }
}

fn injective(map: &[usize]) -> bool {
    let mut seen = BTreeSet::new();
    map.iter().all(|&x| seen.insert(x))
}

/// A closed choice of nodes and edges inside a host graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubgraphSelection {
    pub nodes: BTreeSet<NodeId>,
    pub edges: BTreeSet<EdgeId>,
}

impl SubgraphSelection {
    pub fn new(nodes: BTreeSet<NodeId>, edges: BTreeSet<EdgeId>) -> Self {
        SubgraphSelection { nodes, edges }
    }

    /// The image of a homomorphism as a selection in its codomain.
    pub fn image_of(hom: &Homomorphism, dom: &Hypergraph) -> Self {
        let _ = dom;
        SubgraphSelection {
            nodes: hom.node_map.iter().copied().collect(),
            edges: hom.edge_map.iter().copied().collect(),
        }
    }

    /// Everything in range and all endpoints of selected edges selected.
    pub fn check_closed(&self, g: &Hypergraph) -> Result<(), GraphError> {
        for &v in &self.nodes {
            g.check_node(v)?;
        }
        for &k in &self.edges {
            let e = g.edge(k)?;
            if e.endpoints().any(|v| !self.nodes.contains(&v)) {
                return Err(GraphError::SelectionNotClosed { edge: k });
            }
        }
        Ok(())
    }
}

/// Backtracking search for homomorphisms. Domain edges are processed in
/// (label, index) order; candidate host edges are tried in ascending index,
/// then any unassigned (isolated) domain nodes in ascending candidate order,
/// so the result list is deterministic.
struct HomSearch<'a> {
    dom: &'a Hypergraph,
    cod: &'a Hypergraph,
    mono: bool,
    bijective: bool,
    first_only: bool,
    seed: Vec<(NodeId, NodeId)>,
}

impl<'a> HomSearch<'a> {
    fn new(dom: &'a Hypergraph, cod: &'a Hypergraph) -> Self {
        HomSearch {
            dom,
            cod,
            mono: false,
            bijective: false,
            first_only: false,
            seed: Vec::new(),
        }
    }

    fn mono(mut self, yes: bool) -> Self {
        self.mono = yes;
        self
    }

    fn bijective(mut self) -> Self {
        self.bijective = true;
        self.mono = true;
        self
    }

    fn first_only(mut self) -> Self {
        self.first_only = true;
        self
    }

    /// Force `node_map[v] = w` pairs before the search starts.
    fn seeded(mut self, pairs: Vec<(NodeId, NodeId)>) -> Self {
        self.seed = pairs;
        self
    }

    fn run(self) -> Vec<Homomorphism> {
        let mut st = SearchState {
            dom: self.dom,
            cod: self.cod,
            mono: self.mono,
            bijective: self.bijective,
            first_only: self.first_only,
            node_map: vec![usize::MAX; self.dom.node_count()],
            node_used: vec![false; self.cod.node_count()],
            edge_map: vec![usize::MAX; self.dom.edge_count()],
            edge_used: vec![false; self.cod.edge_count()],
            dom_degrees: self.dom.all_degrees(),
            cod_degrees: self.cod.all_degrees(),
            order: edge_order(self.dom),
            results: Vec::new(),
        };
        for (v, w) in self.seed {
            if !st.assign_node(v, w) {
                return Vec::new();
            }
        }
        st.extend_edges(0);
        st.results
    }
}

fn edge_order(g: &Hypergraph) -> Vec<EdgeId> {
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    order.sort_by(|&a, &b| {
        g.edges()[a]
            .label
            .cmp(&g.edges()[b].label)
            .then(a.cmp(&b))
    });
    order
}

struct SearchState<'a> {
    dom: &'a Hypergraph,
    cod: &'a Hypergraph,
    mono: bool,
    bijective: bool,
    first_only: bool,
    node_map: Vec<usize>,
    node_used: Vec<bool>,
    edge_map: Vec<usize>,
    edge_used: Vec<bool>,
    dom_degrees: Vec<(usize, usize)>,
    cod_degrees: Vec<(usize, usize)>,
    order: Vec<EdgeId>,
    results: Vec<Homomorphism>,
}

impl<'a> SearchState<'a> {
    fn done(&self) -> bool {
        self.first_only && !self.results.is_empty()
    }

    fn assign_node(&mut self, v: NodeId, w: NodeId) -> bool {
        if self.node_map[v] != usize::MAX {
            return self.node_map[v] == w;
        }
        if self.mono && self.node_used[w] {
            return false;
        }
        if self.bijective && self.dom_degrees[v] != self.cod_degrees[w] {
            return false;
        }
        self.node_map[v] = w;
        self.node_used[w] = true;
        true
    }

    fn unassign_nodes(&mut self, assigned: &[NodeId]) {
        for &v in assigned {
            self.node_used[self.node_map[v]] = false;
            self.node_map[v] = usize::MAX;
        }
    }

    fn extend_edges(&mut self, depth: usize) {
        if self.done() {
            return;
        }
        if depth == self.order.len() {
            self.extend_isolated(0);
            return;
        }
        let e = self.order[depth];
        let de = &self.dom.edges()[e];
        for k in 0..self.cod.edge_count() {
            if self.done() {
                return;
            }
            let ce = &self.cod.edges()[k];
            if ce.label != de.label
                || ce.sources.len() != de.sources.len()
                || ce.targets.len() != de.targets.len()
            {
                continue;
            }
            if self.mono && self.edge_used[k] {
                continue;
            }
            let mut newly = Vec::new();
            let mut ok = true;
            for (p, &v) in de.sources.iter().chain(de.targets.iter()).enumerate() {
                let w = if p < de.sources.len() {
                    ce.sources[p]
                } else {
                    ce.targets[p - de.sources.len()]
                };
                let fresh = self.node_map[v] == usize::MAX;
                if !self.assign_node(v, w) {
                    ok = false;
                    break;
                }
                if fresh {
                    newly.push(v);
                }
            }
            if ok {
                self.edge_map[e] = k;
                self.edge_used[k] = true;
                self.extend_edges(depth + 1);
                self.edge_used[k] = false;
                self.edge_map[e] = usize::MAX;
            }
            self.unassign_nodes(&newly);
        }
    }

    fn extend_isolated(&mut self, from: NodeId) {
        if self.done() {
            return;
        }
        let v = match (from..self.dom.node_count()).find(|&v| self.node_map[v] == usize::MAX) {
            Some(v) => v,
            None => {
                if !self.bijective
                    || (self.node_used.iter().all(|&u| u) && self.edge_used.iter().all(|&u| u))
                {
                    self.results.push(Homomorphism {
                        node_map: self.node_map.clone(),
                        edge_map: self.edge_map.clone(),
                    });
                }
                return;
            }
        };
        for w in 0..self.cod.node_count() {
            if self.done() {
                return;
            }
            if self.assign_node(v, w) {
                self.extend_isolated(v + 1);
                self.unassign_nodes(&[v]);
            }
        }
    }
}

/// Homomorphisms `dom -> cod` extending the forced node pairs, e.g. an
/// interface correspondence. Used for isomorphism of interfaced graphs.
pub fn seeded_isomorphism(
    dom: &Hypergraph,
    cod: &Hypergraph,
    pairs: Vec<(NodeId, NodeId)>,
) -> Option<Homomorphism> {
    if !iso_feasible(dom, cod) {
        return None;
    }
    HomSearch::new(dom, cod)
        .bijective()
        .first_only()
        .seeded(pairs)
        .run()
        .pop()
}

/// Pushout of `B <- A -> C` where the apex `A` is discrete, given as its
/// node count and the two leg maps. Non-discrete apexes are unrepresentable
/// here by design: every pushout the engine needs has a discrete apex.
///
/// Nodes of the result are the quotient of `nodes(B) + nodes(C)` by
/// `leg_b(a) ~ leg_c(a)`, numbered by first occurrence (B first); edges are
/// `edges(B)` then `edges(C)`.
pub fn pushout(
    apex_nodes: usize,
    b: &Hypergraph,
    c: &Hypergraph,
    leg_b: &[NodeId],
    leg_c: &[NodeId],
) -> Result<(Hypergraph, Homomorphism, Homomorphism), GraphError> {
    assert_eq!(leg_b.len(), apex_nodes, "leg into B has wrong length");
    assert_eq!(leg_c.len(), apex_nodes, "leg into C has wrong length");
    for &v in leg_b {
        b.check_node(v)?;
    }
    for &v in leg_c {
        c.check_node(v)?;
    }

    let nb = b.node_count();
    let nc = c.node_count();
    let mut uf = UnionFind::new(nb + nc);
    for a in 0..apex_nodes {
        uf.union(leg_b[a], nb + leg_c[a]);
    }
    // Number classes by first occurrence.
    let mut class_id = vec![usize::MAX; nb + nc];
    let mut next = 0;
    let mut table = vec![usize::MAX; nb + nc];
    for (x, slot) in table.iter_mut().enumerate() {
        let r = uf.find(x);
        if class_id[r] == usize::MAX {
            class_id[r] = next;
            next += 1;
        }
        *slot = class_id[r];
    }
    let quot = |x: usize| table[x];

    let mut result = Hypergraph::discrete(next);
    for e in b.edges() {
        result
            .add_edge(
                e.label.clone(),
                e.sources.iter().map(|&v| quot(v)).collect(),
                e.targets.iter().map(|&v| quot(v)).collect(),
            )
            .expect("pushout endpoints in range");
    }
    for e in c.edges() {
        result
            .add_edge(
                e.label.clone(),
                e.sources.iter().map(|&v| quot(nb + v)).collect(),
                e.targets.iter().map(|&v| quot(nb + v)).collect(),
            )
            .expect("pushout endpoints in range");
    }
    let inj_b = Homomorphism {
        node_map: (0..nb).map(quot).collect(),
        edge_map: (0..b.edge_count()).collect(),
    };
    let inj_c = Homomorphism {
        node_map: (0..nc).map(|v| quot(nb + v)).collect(),
        edge_map: (0..c.edge_count()).map(|e| b.edge_count() + e).collect(),
    };
    Ok((result, inj_b, inj_c))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // Keep the smaller root so class numbering follows first occurrence.
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
    }
}
