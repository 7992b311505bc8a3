//! Double-pushout rewriting of interfaced hypergraphs.
//!
//! A rule is a span `L <- i+j -> R` with a discrete interface, stored as the
//! left and right graphs with a flat interface node list and the `(i, j)`
//! split. Matching finds mono images of `L` in a host; a step removes the
//! image, keeps a complement glued along the interface, and pushes the
//! right-hand side back in.
//!
//! Two complement constructions are provided: exhaustive enumeration of
//! pushout complements (unrestricted rewriting, where interfaces may be
//! glued in several ways), and the direct boundary complement whose
//! interface split makes the context monogamous (the sound notion for plain
//! symmetric monoidal rewriting, where it is unique).

use thiserror::Error;

use crate::cospan::{CospanError, InterfacedGraph};
use crate::hypergraph::{
    pushout, seeded_isomorphism, GraphError, Homomorphism, Hypergraph, NodeId, SubgraphSelection,
};
use crate::signature::Signature;
use crate::term::{interpret, Mode, RewriteRuleTerm, TypeError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DpoError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("rule `{0}` is not valid for convex rewriting: both sides must be monogamous directed acyclic with mono interface legs")]
    RuleNotConvexValid(String),
    #[error("host is not monogamous directed acyclic")]
    HostNotMda,
    #[error("matching is not a mono homomorphism into the host")]
    InvalidMatch,
    #[error("no pushout complement: the match leaves a dangling edge")]
    NoComplement,
    #[error("the complement interface split is not monogamous; the match is not rewritable in smc mode")]
    NonMonogamousComplement,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cospan(#[from] CospanError),
}

/// A rewriting rule in graph form. `interface` lists the shared nodes of
/// both sides: first the `input_arity` rule inputs, then the `output_arity`
/// rule outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpoRule {
    pub name: String,
    pub lhs: Hypergraph,
    pub lhs_interface: Vec<NodeId>,
    pub rhs: Hypergraph,
    pub rhs_interface: Vec<NodeId>,
    pub input_arity: usize,
    pub output_arity: usize,
    pub convex_valid: bool,
}

impl DpoRule {
    pub fn interface_len(&self) -> usize {
        self.input_arity + self.output_arity
    }

    pub fn lhs_cospan(&self) -> InterfacedGraph {
        InterfacedGraph::new(
            self.lhs.clone(),
            self.lhs_interface[..self.input_arity].to_vec(),
            self.lhs_interface[self.input_arity..].to_vec(),
        )
        .expect("rule interface in range")
    }

    pub fn rhs_cospan(&self) -> InterfacedGraph {
        InterfacedGraph::new(
            self.rhs.clone(),
            self.rhs_interface[..self.input_arity].to_vec(),
            self.rhs_interface[self.input_arity..].to_vec(),
        )
        .expect("rule interface in range")
    }
}

/// Interpret a term rule `<lhs, rhs> : i -> j` as a DPO rule whose interface
/// is the bent `0 -> i+j` boundary, recorded as the flat list
/// `inputs ++ outputs`. In smc mode the rule must be valid for convex
/// rewriting.
pub fn rule_from_terms(
    rule: &RewriteRuleTerm,
    sig: &Signature,
    mode: Mode,
) -> Result<DpoRule, DpoError> {
    let ty = rule.typecheck(sig, mode)?;
    let lhs = interpret(&rule.lhs, sig, mode)?;
    let rhs = interpret(&rule.rhs, sig, mode)?;
    let convex_valid = cospan_convex_valid(&lhs) && cospan_convex_valid(&rhs);
    if mode == Mode::Smc && !convex_valid {
        return Err(DpoError::RuleNotConvexValid(rule.name.clone()));
    }
    let mut lhs_interface = lhs.inputs.clone();
    lhs_interface.extend(&lhs.outputs);
    let mut rhs_interface = rhs.inputs.clone();
    rhs_interface.extend(&rhs.outputs);
    Ok(DpoRule {
        name: rule.name.clone(),
        lhs: lhs.graph,
        lhs_interface,
        rhs: rhs.graph,
        rhs_interface,
        input_arity: ty.dom,
        output_arity: ty.cod,
        convex_valid,
    })
}

fn cospan_convex_valid(c: &InterfacedGraph) -> bool {
    c.is_mda()
}

/// All mono matchings of the rule's left side in the host, deterministically
/// ordered; with `convex_only` the image must also be a convex subgraph.
pub fn find_matchings(
    rule: &DpoRule,
    host: &InterfacedGraph,
    convex_only: bool,
) -> Vec<Homomorphism> {
    rule.lhs
        .homomorphisms_into(&host.graph, true)
        .into_iter()
        .filter(|m| {
            if !convex_only {
                return true;
            }
            let image = SubgraphSelection::image_of(m, &rule.lhs);
            host.graph.is_convex(&image).unwrap_or(false)
        })
        .collect()
}

/// The context kept by a DPO step: the host minus the matched edges, with
/// the rule interface copied in, plus the legs locating the rule interface
/// and the host interface inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complement {
    pub graph: Hypergraph,
    /// `i+j -> C`: where each rule interface slot sits in the complement.
    pub rule_leg: Vec<NodeId>,
    /// `n -> C` and `m -> C`: where the host interface survives.
    pub host_inputs: Vec<NodeId>,
    pub host_outputs: Vec<NodeId>,
}

impl Complement {
    /// View as a cospan `i+j -> C <- n+m`.
    pub fn as_cospan(&self) -> InterfacedGraph {
        let mut outputs = self.host_inputs.clone();
        outputs.extend(&self.host_outputs);
        InterfacedGraph::new(self.graph.clone(), self.rule_leg.clone(), outputs)
            .expect("complement legs in range")
    }

    /// The boundary cospan `j+n -> C <- m+i` whose monogamy makes the
    /// complement sound for plain symmetric monoidal rewriting.
    pub fn boundary_cospan(&self, input_arity: usize) -> InterfacedGraph {
        let mut left = self.rule_leg[input_arity..].to_vec();
        left.extend(&self.host_inputs);
        let mut right = self.rule_leg[..input_arity].to_vec();
        right.extend(&self.host_outputs);
        InterfacedGraph::new(self.graph.clone(), left, right)
            .expect("complement legs in range")
    }

    fn iso_to(&self, other: &Complement) -> bool {
        if self.rule_leg.len() != other.rule_leg.len()
            || self.host_inputs.len() != other.host_inputs.len()
            || self.host_outputs.len() != other.host_outputs.len()
        {
            return false;
        }
        let pairs: Vec<(NodeId, NodeId)> = self
            .rule_leg
            .iter()
            .zip(&other.rule_leg)
            .chain(self.host_inputs.iter().zip(&other.host_inputs))
            .chain(self.host_outputs.iter().zip(&other.host_outputs))
            .map(|(&a, &b)| (a, b))
            .collect();
        seeded_isomorphism(&self.graph, &other.graph, pairs).is_some()
    }
}

/// Shared scaffolding for both complement constructions: the complement
/// node set (interface copies first, untouched host nodes after) and the
/// canonical placement of the remaining host edges on it.
struct ComplementSkeleton {
    graph: Hypergraph,
    /// complement node -> host node.
    to_host: Vec<NodeId>,
    /// host node -> i-side copy / j-side copy, if any.
    i_copy: Vec<Option<NodeId>>,
    j_copy: Vec<Option<NodeId>>,
    /// host node -> outside copy, if the node survives untouched.
    outside: Vec<Option<NodeId>>,
    kept_edges: Vec<usize>,
}

fn complement_skeleton(
    rule: &DpoRule,
    host: &InterfacedGraph,
    matching: &Homomorphism,
) -> Result<ComplementSkeleton, DpoError> {
    let g = &host.graph;
    let iface_len = rule.interface_len();
    let n = g.node_count();

    let mut i_copy: Vec<Option<NodeId>> = vec![None; n];
    let mut j_copy: Vec<Option<NodeId>> = vec![None; n];
    for (slot, &rule_node) in rule.lhs_interface.iter().enumerate() {
        let v = matching.node_map[rule_node];
        let bucket = if slot < rule.input_arity {
            &mut i_copy
        } else {
            &mut j_copy
        };
        if bucket[v].is_none() {
            bucket[v] = Some(slot);
        }
    }

    // Host nodes hit only by internal (non-interface) rule nodes disappear.
    let mut internal_only = vec![false; n];
    for (rule_node, &v) in matching.node_map.iter().enumerate() {
        if !rule.lhs_interface.contains(&rule_node) {
            internal_only[v] = true;
        }
    }
    for slot_v in rule.lhs_interface.iter().map(|&rn| matching.node_map[rn]) {
        internal_only[slot_v] = false;
    }

    let mut to_host: Vec<NodeId> = Vec::new();
    for slot in 0..iface_len {
        to_host.push(matching.node_map[rule.lhs_interface[slot]]);
    }
    let mut outside: Vec<Option<NodeId>> = vec![None; n];
    for v in 0..n {
        if !internal_only[v] && i_copy[v].is_none() && j_copy[v].is_none() {
            outside[v] = Some(to_host.len());
            to_host.push(v);
        }
    }

    let mut graph = Hypergraph::discrete(to_host.len());
    let matched: std::collections::BTreeSet<usize> = matching.edge_map.iter().copied().collect();
    let mut kept_edges = Vec::new();
    for (k, e) in g.edges().iter().enumerate() {
        if matched.contains(&k) {
            continue;
        }
        kept_edges.push(k);
        let place = |v: NodeId, is_target: bool| -> Result<NodeId, DpoError> {
            if let Some(c) = outside[v] {
                return Ok(c);
            }
            let preferred = if is_target {
                i_copy[v].or(j_copy[v])
            } else {
                j_copy[v].or(i_copy[v])
            };
            preferred.ok_or(DpoError::NoComplement)
        };
        let sources = e
            .sources
            .iter()
            .map(|&v| place(v, false))
            .collect::<Result<Vec<_>, _>>()?;
        let targets = e
            .targets
            .iter()
            .map(|&v| place(v, true))
            .collect::<Result<Vec<_>, _>>()?;
        graph
            .add_edge(e.label.clone(), sources, targets)
            .expect("complement endpoints in range");
    }
    Ok(ComplementSkeleton {
        graph,
        to_host,
        i_copy,
        j_copy,
        outside,
        kept_edges,
    })
}

/// Check that gluing the rule's left side onto the complement along the
/// given leg reproduces the host exactly, compatibly with the matching and
/// the complement's host-node correspondence.
fn gluing_reproduces_host(
    rule: &DpoRule,
    host: &InterfacedGraph,
    matching: &Homomorphism,
    skel: &ComplementSkeleton,
    rule_leg: &[NodeId],
) -> bool {
    let (glued, inj_lhs, inj_c) = match pushout(
        rule.interface_len(),
        &rule.lhs,
        &skel.graph,
        &rule.lhs_interface,
        rule_leg,
    ) {
        Ok(x) => x,
        Err(_) => return false,
    };
    let g = &host.graph;
    if glued.node_count() != g.node_count() || glued.edge_count() != g.edge_count() {
        return false;
    }
    // The correspondence glued -> host forced by the two injections.
    let mut to_host = vec![usize::MAX; glued.node_count()];
    for (rule_node, &p) in inj_lhs.node_map.iter().enumerate() {
        let v = matching.node_map[rule_node];
        if to_host[p] != usize::MAX && to_host[p] != v {
            return false;
        }
        to_host[p] = v;
    }
    for (c_node, &p) in inj_c.node_map.iter().enumerate() {
        let v = skel.to_host[c_node];
        if to_host[p] != usize::MAX && to_host[p] != v {
            return false;
        }
        to_host[p] = v;
    }
    if to_host.contains(&usize::MAX) || !crate::dpo::injective_nodes(&to_host) {
        return false;
    }
    // Edge correspondence: lhs edges land on the matched host edges, the
    // complement's kept edges on themselves, endpoints must agree.
    let mut edge_to_host = vec![usize::MAX; glued.edge_count()];
    for (rule_edge, &p) in inj_lhs.edge_map.iter().enumerate() {
        edge_to_host[p] = matching.edge_map[rule_edge];
    }
    for (c_edge, &p) in inj_c.edge_map.iter().enumerate() {
        edge_to_host[p] = skel.kept_edges[c_edge];
    }
    for (p, e) in glued.edges().iter().enumerate() {
        let h = &g.edges()[edge_to_host[p]];
        if e.label != h.label
            || e.sources.len() != h.sources.len()
            || e.targets.len() != h.targets.len()
        {
            return false;
        }
        let ok = e
            .sources
            .iter()
            .zip(&h.sources)
            .chain(e.targets.iter().zip(&h.targets))
            .all(|(&a, &b)| to_host[a] == b);
        if !ok {
            return false;
        }
    }
    true
}

pub(crate) fn injective_nodes(map: &[usize]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    map.iter().all(|&x| seen.insert(x))
}

/// Enumerate the pushout complements of a match: the complement graph keeps
/// the unmatched host edges attached to interface copies (targets on the
/// input side, sources on the output side), and every way of routing the
/// rule and host interfaces through the copies that makes the left square a
/// pushout is listed, up to interface-preserving isomorphism.
pub fn pushout_complements(
    rule: &DpoRule,
    host: &InterfacedGraph,
    matching: &Homomorphism,
) -> Result<Vec<Complement>, DpoError> {
    if !matching.verify(&rule.lhs, &host.graph) {
        return Err(DpoError::InvalidMatch);
    }
    if !injective_nodes(&matching.edge_map) {
        return Ok(Vec::new());
    }
    let skel = match complement_skeleton(rule, host, matching) {
        Ok(s) => s,
        Err(DpoError::NoComplement) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };

    // Candidate complement nodes for each rule interface slot and each host
    // interface position: any copy of the same host node.
    let copies_of = |v: NodeId| -> Vec<NodeId> {
        let mut cs = Vec::new();
        if let Some(c) = skel.outside[v] {
            cs.push(c);
        }
        if let Some(c) = skel.i_copy[v] {
            cs.push(c);
        }
        if let Some(c) = skel.j_copy[v] {
            cs.push(c);
        }
        cs.sort_unstable();
        cs
    };
    let slot_candidates: Vec<Vec<NodeId>> = rule
        .lhs_interface
        .iter()
        .map(|&rn| copies_of(matching.node_map[rn]))
        .collect();
    let host_in_candidates: Vec<Vec<NodeId>> =
        host.inputs.iter().map(|&v| copies_of(v)).collect();
    let host_out_candidates: Vec<Vec<NodeId>> =
        host.outputs.iter().map(|&v| copies_of(v)).collect();

    let mut found: Vec<Complement> = Vec::new();
    let mut rule_leg = vec![0usize; slot_candidates.len()];
    enumerate_product(&slot_candidates, &mut rule_leg, 0, &mut |leg| {
        if !gluing_reproduces_host(rule, host, matching, &skel, leg) {
            return;
        }
        let mut host_in = vec![0usize; host_in_candidates.len()];
        let leg = leg.to_vec();
        enumerate_product(&host_in_candidates, &mut host_in, 0, &mut |hin| {
            let mut host_out = vec![0usize; host_out_candidates.len()];
            let hin = hin.to_vec();
            enumerate_product(&host_out_candidates, &mut host_out, 0, &mut |hout| {
                let candidate = Complement {
                    graph: skel.graph.clone(),
                    rule_leg: leg.clone(),
                    host_inputs: hin.clone(),
                    host_outputs: hout.to_vec(),
                };
                if !found.iter().any(|c| c.iso_to(&candidate)) {
                    found.push(candidate);
                }
            });
        });
    });
    Ok(found)
}

fn enumerate_product(
    candidates: &[Vec<NodeId>],
    current: &mut Vec<NodeId>,
    depth: usize,
    emit: &mut dyn FnMut(&[NodeId]),
) {
    if depth == candidates.len() {
        emit(current);
        return;
    }
    for &c in &candidates[depth] {
        current[depth] = c;
        enumerate_product(candidates, current, depth + 1, emit);
    }
}

/// The boundary complement of a mono match: unmatched edges attach to the
/// output-side copy when they consume a boundary node and to the input-side
/// copy when they produce it, the host interface resolves the same way, and
/// the result is verified to glue back to the host and to be monogamous as
/// the boundary cospan.
pub fn boundary_complement(
    rule: &DpoRule,
    host: &InterfacedGraph,
    matching: &Homomorphism,
) -> Result<Complement, DpoError> {
    if !rule.convex_valid {
        return Err(DpoError::RuleNotConvexValid(rule.name.clone()));
    }
    if !host.is_mda() {
        return Err(DpoError::HostNotMda);
    }
    if !matching.verify(&rule.lhs, &host.graph) || !matching.is_mono() {
        return Err(DpoError::InvalidMatch);
    }
    let skel = complement_skeleton(rule, host, matching)?;
    let rule_leg: Vec<NodeId> = (0..rule.interface_len()).collect();
    let host_inputs: Vec<NodeId> = host
        .inputs
        .iter()
        .map(|&v| {
            skel.outside[v]
                .or(skel.i_copy[v])
                .or(skel.j_copy[v])
                .ok_or(DpoError::NoComplement)
        })
        .collect::<Result<_, _>>()?;
    let host_outputs: Vec<NodeId> = host
        .outputs
        .iter()
        .map(|&v| {
            skel.outside[v]
                .or(skel.j_copy[v])
                .or(skel.i_copy[v])
                .ok_or(DpoError::NoComplement)
        })
        .collect::<Result<_, _>>()?;
    let complement = Complement {
        graph: skel.graph.clone(),
        rule_leg,
        host_inputs,
        host_outputs,
    };
    if !gluing_reproduces_host(rule, host, matching, &skel, &complement.rule_leg) {
        return Err(DpoError::NoComplement);
    }
    if !complement.boundary_cospan(rule.input_arity).is_monogamous() {
        return Err(DpoError::NonMonogamousComplement);
    }
    Ok(complement)
}

/// Whether a complement satisfies the boundary conditions: the rule leg is
/// mono and the boundary cospan is monogamous.
pub fn is_boundary(complement: &Complement, input_arity: usize) -> bool {
    injective_nodes(&complement.rule_leg)
        && complement.boundary_cospan(input_arity).is_monogamous()
}

/// Glue the rule's right side into a complement: the right pushout of the
/// DPO diagram. The host interface is carried through the complement.
pub fn dpo_step(rule: &DpoRule, complement: &Complement) -> InterfacedGraph {
    let (glued, _inj_rhs, inj_c) = pushout(
        rule.interface_len(),
        &rule.rhs,
        &complement.graph,
        &rule.rhs_interface,
        &complement.rule_leg,
    )
    .expect("rule and complement legs are valid");
    let result = InterfacedGraph::new(
        glued,
        complement
            .host_inputs
            .iter()
            .map(|&v| inj_c.node_map[v])
            .collect(),
        complement
            .host_outputs
            .iter()
            .map(|&v| inj_c.node_map[v])
            .collect(),
    )
    .expect("host interface survives the step");
    result.renumbered()
}

/// One recorded step of a rewrite.
#[derive(Debug, Clone)]
pub struct RewriteStepRecord {
    pub rule_name: String,
    pub matching: Homomorphism,
    pub complement: Complement,
    pub before: InterfacedGraph,
    pub after: InterfacedGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizeOutcome {
    NormalForm,
    FuelExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// First rule in declaration order, first match in enumeration order,
    /// first complement.
    Deterministic,
    /// Uniform choice among all applicable (rule, match, complement)
    /// triples, driven by the given seed.
    Seeded(u64),
}

/// All single-step results from `host`: in smc mode one per convex match
/// with its boundary complement, in frobenius mode one per mono match and
/// pushout complement.
pub fn applicable_steps(
    host: &InterfacedGraph,
    system: &[DpoRule],
    mode: Mode,
) -> Result<Vec<RewriteStepRecord>, DpoError> {
    if mode == Mode::Smc && !host.is_mda() {
        return Err(DpoError::HostNotMda);
    }
    let mut steps = Vec::new();
    for rule in system {
        if mode == Mode::Smc && !rule.convex_valid {
            return Err(DpoError::RuleNotConvexValid(rule.name.clone()));
        }
        for matching in find_matchings(rule, host, mode == Mode::Smc) {
            let complements = match mode {
                Mode::Smc => match boundary_complement(rule, host, &matching) {
                    Ok(c) => vec![c],
                    Err(DpoError::NoComplement | DpoError::NonMonogamousComplement) => vec![],
                    Err(e) => return Err(e),
                },
                Mode::Frobenius => pushout_complements(rule, host, &matching)?,
            };
            for complement in complements {
                let after = dpo_step(rule, &complement);
                steps.push(RewriteStepRecord {
                    rule_name: rule.name.clone(),
                    matching: matching.clone(),
                    complement,
                    before: host.clone(),
                    after,
                });
            }
        }
    }
    Ok(steps)
}

/// Apply one step if any is applicable.
pub fn rewrite_once(
    host: &InterfacedGraph,
    system: &[DpoRule],
    mode: Mode,
    strategy: Strategy,
) -> Result<Option<RewriteStepRecord>, DpoError> {
    let mut steps = applicable_steps(host, system, mode)?;
    if steps.is_empty() {
        return Ok(None);
    }
    let index = match strategy {
        Strategy::Deterministic => 0,
        Strategy::Seeded(seed) => {
            let mut rng = crate::rng::SplitMix64::new(seed);
            (rng.next_u64() % steps.len() as u64) as usize
        }
    };
    Ok(Some(steps.swap_remove(index)))
}

/// Rewrite until no rule applies or the fuel runs out.
pub fn normalize(
    host: &InterfacedGraph,
    system: &[DpoRule],
    mode: Mode,
    fuel: usize,
    strategy: Strategy,
) -> Result<(InterfacedGraph, Vec<RewriteStepRecord>, NormalizeOutcome), DpoError> {
    let mut current = host.clone();
    let mut trace = Vec::new();
    for step_index in 0..fuel {
        let next_strategy = match strategy {
            Strategy::Deterministic => Strategy::Deterministic,
            Strategy::Seeded(seed) => Strategy::Seeded(seed.wrapping_add(step_index as u64)),
        };
        match rewrite_once(&current, system, mode, next_strategy)? {
            Some(record) => {
                current = record.after.clone();
                trace.push(record);
            }
            None => return Ok((current, trace, NormalizeOutcome::NormalForm)),
        }
    }
    let exhausted = rewrite_once(&current, system, mode, Strategy::Deterministic)?.is_some();
    let outcome = if exhausted {
        NormalizeOutcome::FuelExhausted
    } else {
        NormalizeOutcome::NormalForm
    };
    Ok((current, trace, outcome))
}
