//! Reading terms back out of interfaced graphs.
//!
//! [`readback_mda`] succeeds exactly on monogamous directed acyclic cospans
//! and produces a canonical representative: isomorphic cospans (with the
//! interfaces kept pointwise) yield the identical term. The traversal emits
//! one edge at a time from an ordered frontier of open wires; every choice
//! it makes is a function of the structure, never of node or edge numbering.
//!
//! [`readback_frobenius`] handles arbitrary cospans by splitting them into a
//! left gluing pattern, a tensor of generators, and a right gluing pattern,
//! rendering the gluing functions with Frobenius (co)multiplication trees.

use thiserror::Error;

use crate::cospan::InterfacedGraph;
use crate::hypergraph::{EdgeId, Hypergraph, NodeId};
use crate::signature::{Generator, Signature};
use crate::term::{interpret, perm_to_term, Mode, Term};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReadbackError {
    #[error("cospan is not monogamous directed acyclic, so it denotes no plain term")]
    NotMda,
    #[error("label `{0}` is used with inconsistent arities")]
    InconsistentLabel(String),
}

/// Extract a term whose interpretation is isomorphic to `c`. Fails exactly
/// when `c` is not monogamous directed acyclic.
pub fn readback_mda(c: &InterfacedGraph) -> Result<Term, ReadbackError> {
    if !c.is_mda() {
        return Err(ReadbackError::NotMda);
    }
    let mut state = Traversal {
        graph: &c.graph,
        outputs: &c.outputs,
        emitted: vec![false; c.graph.edge_count()],
        frontier: c.inputs.clone(),
        remaining: c.graph.edge_count(),
    };
    Ok(state.rest())
}

/// The signature implied by a graph's own edges: each label with the source
/// and target counts of its occurrences.
pub fn implicit_signature(g: &Hypergraph) -> Result<Signature, ReadbackError> {
    let mut gens: Vec<Generator> = Vec::new();
    for e in g.edges() {
        match gens.iter().find(|c| c.name == e.label) {
            Some(c) => {
                if c.arity != e.sources.len() || c.coarity != e.targets.len() {
                    return Err(ReadbackError::InconsistentLabel(e.label.clone()));
                }
            }
            None => gens.push(Generator::new(
                e.label.clone(),
                e.sources.len(),
                e.targets.len(),
            )),
        }
    }
    Ok(Signature::new(gens).expect("labels deduplicated"))
}

/// Canonical form of a cospan. On MDA cospans this is the interpretation of
/// the canonical readback term, so isomorphic inputs produce structurally
/// identical outputs; otherwise it falls back to the breadth-first
/// renumbering, which is deterministic and idempotent but only canonical up
/// to the original numbering.
pub fn canonicalize(c: &InterfacedGraph) -> InterfacedGraph {
    if c.is_mda() {
        if let Ok(sig) = implicit_signature(&c.graph) {
            let t = readback_mda(c).expect("checked MDA");
            return interpret(&t, &sig, Mode::Smc).expect("readback term is well-typed");
        }
    }
    c.renumbered()
}

struct Traversal<'a> {
    graph: &'a Hypergraph,
    outputs: &'a [NodeId],
    emitted: Vec<bool>,
    frontier: Vec<NodeId>,
    remaining: usize,
}

impl<'a> Traversal<'a> {
    /// The canonical remainder term of type `|frontier| -> |outputs|`.
    fn rest(&mut self) -> Term {
        if self.remaining == 0 {
            return self.final_permutation();
        }
        if let Some(e) = self.ready_edge() {
            let (undo, piece_head) = self.emit(e);
            let tail = self.rest();
            self.unemit(e, undo);
            return join(piece_head, tail);
        }
        // No positioned edge is ready, so a source-less edge must be next.
        let branch = self.sourceless_branch();
        debug_assert!(!branch.is_empty(), "MDA traversal cannot get stuck");
        let mut best: Option<Term> = None;
        for e in branch {
            let (undo, piece_head) = self.emit(e);
            let tail = self.rest();
            self.unemit(e, undo);
            let candidate = join(piece_head, tail);
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
        best.expect("nonempty branch set")
    }

    /// The unemitted edge with sources, all on the frontier, whose least
    /// source position is minimal. Positions of distinct ready edges are
    /// disjoint, so the minimum is unique.
    fn ready_edge(&self) -> Option<EdgeId> {
        let mut best: Option<(usize, EdgeId)> = None;
        for (k, e) in self.graph.edges().iter().enumerate() {
            if self.emitted[k] || e.sources.is_empty() {
                continue;
            }
            let mut min_pos = usize::MAX;
            let mut all = true;
            for s in &e.sources {
                match self.frontier.iter().position(|v| v == s) {
                    Some(p) => min_pos = min_pos.min(p),
                    None => {
                        all = false;
                        break;
                    }
                }
            }
            if all && best.is_none_or(|(bp, _)| min_pos < bp) {
                best = Some((min_pos, k));
            }
        }
        best.map(|(_, k)| k)
    }

    /// Candidate source-less edges to try next: those whose forward-cone
    /// fingerprint is least. Cones that are closed (no frontier or output
    /// contact and no outside sources) and identical are interchangeable, so
    /// only one representative is kept.
    fn sourceless_branch(&self) -> Vec<EdgeId> {
        let mut candidates: Vec<(ConeFingerprint, EdgeId)> = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(k, e)| !self.emitted[*k] && e.sources.is_empty())
            .map(|(k, _)| (self.cone_fingerprint(k), k))
            .collect();
        candidates.sort();
        let Some((least, _)) = candidates.first().cloned() else {
            return Vec::new();
        };
        let tied: Vec<EdgeId> = candidates
            .into_iter()
            .take_while(|(fp, _)| *fp == least)
            .map(|(_, k)| k)
            .collect();
        if !least.tainted {
            // Identical closed cones: swapping them is an automorphism.
            vec![tied[0]]
        } else {
            tied
        }
    }

    /// Deterministic serialization of everything forward-reachable from
    /// edge `k`, in terms of labels and interface positions only. `tainted`
    /// marks cones that touch anything position-relevant outside themselves.
    fn cone_fingerprint(&self, k: EdgeId) -> ConeFingerprint {
        let mut fp = ConeFingerprint::default();
        let mut node_ids: Vec<(NodeId, usize)> = Vec::new();
        let mut edge_seen = vec![false; self.graph.edge_count()];
        self.serialize_edge(k, &mut fp, &mut node_ids, &mut edge_seen);
        fp
    }

    fn serialize_edge(
        &self,
        k: EdgeId,
        fp: &mut ConeFingerprint,
        node_ids: &mut Vec<(NodeId, usize)>,
        edge_seen: &mut [bool],
    ) {
        edge_seen[k] = true;
        let e = &self.graph.edges()[k];
        // Length-prefix the label so no label can imitate the markers.
        fp.text
            .push_str(&format!("[{}:{}", e.label.len(), e.label));
        for &s in &e.sources {
            match node_ids.iter().find(|(v, _)| *v == s) {
                Some((_, id)) => fp.text.push_str(&format!(" b{id}")),
                None => match self.frontier.iter().position(|v| *v == s) {
                    Some(p) => {
                        // A frontier wire pins the cone to a global
                        // position; equal fingerprints could then share it.
                        fp.tainted = true;
                        fp.text.push_str(&format!(" f{p}"));
                    }
                    None => {
                        // Fed by something outside the cone.
                        fp.tainted = true;
                        fp.text.push_str(" x");
                    }
                },
            }
        }
        fp.text.push('|');
        for &t in &e.targets {
            self.serialize_node(t, fp, node_ids, edge_seen);
        }
        fp.text.push(']');
    }

    fn serialize_node(
        &self,
        v: NodeId,
        fp: &mut ConeFingerprint,
        node_ids: &mut Vec<(NodeId, usize)>,
        edge_seen: &mut [bool],
    ) {
        if let Some((_, id)) = node_ids.iter().find(|(w, _)| *w == v) {
            fp.text.push_str(&format!(" b{id}"));
            return;
        }
        let id = node_ids.len();
        node_ids.push((v, id));
        if let Some(p) = self.outputs.iter().position(|w| *w == v) {
            fp.tainted = true;
            fp.text.push_str(&format!(" o{p}"));
            return;
        }
        match self.graph.out_edges(v).next() {
            Some(k) if !edge_seen[k] => {
                fp.text.push(' ');
                self.serialize_edge(k, fp, node_ids, edge_seen);
            }
            Some(_) => fp.text.push_str(&format!(" n{id}")),
            None => fp.text.push_str(&format!(" n{id}")),
        }
    }

    /// Emit edge `e`: route its sources to the end of the frontier (one
    /// rightward rotation per displaced source), apply the generator layer,
    /// push its targets. Returns the undo record and the term piece for
    /// this step.
    fn emit(&mut self, e: EdgeId) -> (Vec<NodeId>, Term) {
        let edge = &self.graph.edges()[e];
        let width = self.frontier.len();
        let p = edge.sources.len();
        let mut work = self.frontier.clone();
        let mut layers: Vec<Term> = Vec::new();
        for (s_idx, s) in edge.sources.iter().enumerate() {
            let c = work
                .iter()
                .position(|v| v == s)
                .expect("ready edge sources on frontier");
            // Already in final position, with the remaining sources after it.
            if work[c..].iter().eq(edge.sources[s_idx..].iter()) {
                break;
            }
            if c + 1 < width {
                let mut parts = Vec::new();
                if c > 0 {
                    parts.push(Term::Id(c));
                }
                parts.push(Term::Sym(1, width - c - 1));
                layers.push(Term::par_all(parts));
            }
            let v = work.remove(c);
            work.push(v);
        }
        let layer = if width - p > 0 {
            Term::par(Term::Id(width - p), Term::gen(&edge.label))
        } else {
            Term::gen(&edge.label)
        };
        let piece = if layers.is_empty() {
            layer
        } else {
            Term::seq(Term::seq_all(layers), layer)
        };

        let old_frontier = std::mem::take(&mut self.frontier);
        self.frontier = work[..width - p].to_vec();
        self.frontier.extend(edge.targets.iter().copied());
        self.emitted[e] = true;
        self.remaining -= 1;
        (old_frontier, piece)
    }

    fn unemit(&mut self, e: EdgeId, old_frontier: Vec<NodeId>) {
        self.frontier = old_frontier;
        self.emitted[e] = false;
        self.remaining += 1;
    }

    fn final_permutation(&self) -> Term {
        debug_assert_eq!(self.frontier.len(), self.outputs.len());
        let perm: Vec<usize> = self
            .frontier
            .iter()
            .map(|v| {
                self.outputs
                    .iter()
                    .position(|w| w == v)
                    .expect("frontier ends as the outputs")
            })
            .collect();
        perm_to_term(&perm)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
struct ConeFingerprint {
    text: String,
    tainted: bool,
}

/// `head ; tail`, absorbing identity tails so the last permutation layer is
/// only present when it permutes.
fn join(head: Term, tail: Term) -> Term {
    if matches!(tail, Term::Id(_)) {
        head
    } else {
        Term::seq(head, tail)
    }
}

/// Read any cospan back as a term over the signature plus Frobenius
/// generators: a left gluing pattern, the tensor of all edges over an
/// identity bus, and a right gluing pattern.
pub fn readback_frobenius(c: &InterfacedGraph) -> Term {
    let g = &c.graph;
    let n_nodes = g.node_count();

    // Concatenated source and target slots of every edge, in edge order.
    let mut edge_inputs: Vec<NodeId> = Vec::new();
    let mut edge_outputs: Vec<NodeId> = Vec::new();
    let mut gens: Vec<Term> = Vec::new();
    for e in g.edges() {
        edge_inputs.extend(e.sources.iter().copied());
        edge_outputs.extend(e.targets.iter().copied());
        gens.push(Term::gen(&e.label));
    }

    // Left pattern n -> N + in-slots, generator bus, right pattern
    // N + out-slots -> m.
    let mut left_right_leg: Vec<NodeId> = (0..n_nodes).collect();
    left_right_leg.extend(&edge_inputs);
    let part1 = Term::seq(
        spider_join(&c.inputs, n_nodes),
        spider_split(&left_right_leg, n_nodes),
    );

    let bus = if gens.is_empty() {
        Term::Id(n_nodes)
    } else if n_nodes > 0 {
        Term::par(Term::Id(n_nodes), Term::par_all(gens))
    } else {
        Term::par_all(gens)
    };

    let mut right_left_leg: Vec<NodeId> = (0..n_nodes).collect();
    right_left_leg.extend(&edge_outputs);
    let part3 = Term::seq(
        spider_join(&right_left_leg, n_nodes),
        spider_split(&c.outputs, n_nodes),
    );

    compose_parts(vec![part1, bus, part3], c.arity())
}

/// Sequential composition with syntactic identities dropped.
fn compose_parts(parts: Vec<Term>, dom: usize) -> Term {
    let mut useful: Vec<Term> = Vec::new();
    for p in parts {
        match p {
            Term::Id(_) => {}
            Term::Seq(a, b) => {
                for q in [*a, *b] {
                    if !matches!(q, Term::Id(_)) {
                        useful.push(q);
                    }
                }
            }
            other => useful.push(other),
        }
    }
    if useful.is_empty() {
        Term::Id(dom)
    } else {
        Term::seq_all(useful)
    }
}

/// Render a function `slots -> nodes` as `permutation ; per-node
/// multiplication trees`: slots are routed so each node's preimage is
/// contiguous, then folded with `fmul` (or created with `funit`).
fn spider_join(func: &[NodeId], n_nodes: usize) -> Term {
    let (perm, fiber_sizes) = fiber_sort(func, n_nodes);
    let trees: Vec<Term> = fiber_sizes.iter().map(|&s| mul_tree(s)).collect();
    let folded = if trees.is_empty() {
        Term::Id(0)
    } else {
        Term::par_all(trees)
    };
    compose_parts(vec![perm_to_term(&perm), folded], func.len())
}

/// Mirror image of [`spider_join`]: per-node comultiplication trees, then
/// the permutation scattering fibers back to slot order.
fn spider_split(func: &[NodeId], n_nodes: usize) -> Term {
    let (perm, fiber_sizes) = fiber_sort(func, n_nodes);
    let trees: Vec<Term> = fiber_sizes.iter().map(|&s| comul_tree(s)).collect();
    let folded = if trees.is_empty() {
        Term::Id(0)
    } else {
        Term::par_all(trees)
    };
    // Invert: sorted position -> original slot.
    let mut inv = vec![0usize; perm.len()];
    for (slot, &rank) in perm.iter().enumerate() {
        inv[rank] = slot;
    }
    compose_parts(vec![folded, perm_to_term(&inv)], n_nodes)
}

/// Stable fiber sort: `perm[slot]` is the rank of that slot when slots are
/// listed fiber by fiber; also returns each node's fiber size.
fn fiber_sort(func: &[NodeId], n_nodes: usize) -> (Vec<usize>, Vec<usize>) {
    let mut perm = vec![0usize; func.len()];
    let mut sizes = vec![0usize; n_nodes];
    let mut rank = 0;
    for (x, size) in sizes.iter_mut().enumerate() {
        for (slot, &fx) in func.iter().enumerate() {
            if fx == x {
                perm[slot] = rank;
                rank += 1;
                *size += 1;
            }
        }
    }
    (perm, sizes)
}

/// Left-nested `fmul` tree `k -> 1`.
fn mul_tree(k: usize) -> Term {
    match k {
        0 => Term::FUnit,
        1 => Term::Id(1),
        2 => Term::FMul,
        _ => Term::seq(Term::par(Term::FMul, Term::Id(k - 2)), mul_tree(k - 1)),
    }
}

/// Left-nested `fcomul` tree `1 -> k`.
fn comul_tree(k: usize) -> Term {
    match k {
        0 => Term::FCounit,
        1 => Term::Id(1),
        2 => Term::FComul,
        _ => Term::seq(comul_tree(k - 1), Term::par(Term::FComul, Term::Id(k - 2))),
    }
}
