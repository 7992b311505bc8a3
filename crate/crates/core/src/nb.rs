//! The non-commutative bimonoid rewrite system and its termination metric.
//!
//! The signature has a multiplication `mu : 2 -> 1`, unit `eta : 0 -> 1`,
//! comultiplication `nu : 1 -> 2` and counit `eps : 1 -> 0`. The ten rules
//! orient the bimonoid equations left to right. The metric is the
//! lexicographic tuple of U-path count, M-path count, `mu` count, `nu`
//! count, and total L-weight; every rule strictly decreases it.

use std::fmt;

use thiserror::Error;

use crate::cospan::InterfacedGraph;
use crate::dpo::{rule_from_terms, DpoRule, RewriteStepRecord};
use crate::hypergraph::{EdgeId, Hypergraph, NodeId};
use crate::signature::{Generator, Signature};
use crate::term::{Mode, RewriteRuleTerm, Term};

pub const MU: &str = "mu";
pub const ETA: &str = "eta";
pub const NU: &str = "nu";
pub const EPS: &str = "eps";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricError {
    #[error("metric requires a monogamous directed acyclic host")]
    NotMda,
    #[error("path counting requires an acyclic graph")]
    Cyclic,
}

pub fn nb_signature() -> Signature {
    Signature::new(vec![
        Generator::new(MU, 2, 1),
        Generator::new(ETA, 0, 1),
        Generator::new(NU, 1, 2),
        Generator::new(EPS, 1, 0),
    ])
    .expect("distinct generator names")
}

/// The ten oriented bimonoid equations as term rules.
pub fn nb_rules() -> Vec<RewriteRuleTerm> {
    let mu = || Term::gen(MU);
    let eta = || Term::gen(ETA);
    let nu = || Term::gen(NU);
    let eps = || Term::gen(EPS);
    let id = || Term::Id(1);
    vec![
        RewriteRuleTerm::new(
            "ba1",
            Term::seq(Term::par(mu(), id()), mu()),
            Term::seq(Term::par(id(), mu()), mu()),
        ),
        RewriteRuleTerm::new(
            "ba2",
            Term::seq(nu(), Term::par(nu(), id())),
            Term::seq(nu(), Term::par(id(), nu())),
        ),
        RewriteRuleTerm::new("ba3", Term::seq(Term::par(eta(), id()), mu()), id()),
        RewriteRuleTerm::new("ba4", Term::seq(nu(), Term::par(eps(), id())), id()),
        RewriteRuleTerm::new("ba5", Term::seq(Term::par(id(), eta()), mu()), id()),
        RewriteRuleTerm::new("ba6", Term::seq(nu(), Term::par(id(), eps())), id()),
        RewriteRuleTerm::new("ba7", Term::seq(eta(), nu()), Term::par(eta(), eta())),
        RewriteRuleTerm::new("ba8", Term::seq(mu(), eps()), Term::par(eps(), eps())),
        RewriteRuleTerm::new(
            "ba9",
            Term::seq(mu(), nu()),
            Term::seq(
                Term::par(nu(), nu()),
                Term::seq(
                    Term::par(Term::Id(1), Term::par(Term::Sym(1, 1), Term::Id(1))),
                    Term::par(mu(), mu()),
                ),
            ),
        ),
        RewriteRuleTerm::new("ba10", Term::seq(eta(), eps()), Term::Id(0)),
    ]
}

/// The rules in graph form, valid for convex rewriting.
pub fn nb_system() -> Vec<DpoRule> {
    let sig = nb_signature();
    nb_rules()
        .iter()
        .map(|r| rule_from_terms(r, &sig, Mode::Smc).expect("bimonoid rules are convex-valid"))
        .collect()
}

/// The five-component termination measure, compared lexicographically in
/// field order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct NbMetric {
    pub u_paths: u128,
    pub m_paths: u128,
    pub mu_count: u64,
    pub nu_count: u64,
    pub l_weight_sum: u64,
}

impl fmt::Display for NbMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {})",
            self.u_paths, self.m_paths, self.mu_count, self.nu_count, self.l_weight_sum
        )
    }
}

/// Strict lexicographic comparison.
pub fn less_than(a: &NbMetric, b: &NbMetric) -> bool {
    a < b
}

/// Walks from any input node or `eta` edge to any output node or `eps`
/// edge, counted over the node/edge incidence dag.
pub fn count_u_paths(host: &InterfacedGraph) -> Result<u128, MetricError> {
    let g = &host.graph;
    let seed_nodes = mark_nodes(g, &host.inputs);
    let seed_edges = mark_edges(g, ETA);
    let sink_nodes = mark_nodes(g, &host.outputs);
    let sink_edges = mark_edges(g, EPS);
    count_walks(g, &seed_nodes, &seed_edges, &sink_nodes, &sink_edges)
}

/// Walks from a `mu` edge to a `nu` edge.
pub fn count_m_paths(host: &InterfacedGraph) -> Result<u128, MetricError> {
    let g = &host.graph;
    let seed_edges = mark_edges(g, MU);
    let sink_edges = mark_edges(g, NU);
    let none = vec![false; g.node_count()];
    count_walks(g, &none, &seed_edges, &none, &sink_edges)
}

fn mark_nodes(g: &Hypergraph, nodes: &[NodeId]) -> Vec<bool> {
    let mut m = vec![false; g.node_count()];
    for &v in nodes {
        m[v] = true;
    }
    m
}

fn mark_edges(g: &Hypergraph, label: &str) -> Vec<bool> {
    g.edges().iter().map(|e| e.label == label).collect()
}

/// Dynamic programming over the incidence dag: vertex `v < n` is a node,
/// `n + k` is edge `k`; arcs carry the multiplicity of the incidence.
fn count_walks(
    g: &Hypergraph,
    seed_nodes: &[bool],
    seed_edges: &[bool],
    sink_nodes: &[bool],
    sink_edges: &[bool],
) -> Result<u128, MetricError> {
    if !g.is_acyclic() {
        return Err(MetricError::Cyclic);
    }
    let n = g.node_count();
    let m = g.edge_count();
    // In-arcs with multiplicity for each vertex.
    let mut incoming: Vec<Vec<(usize, u128)>> = vec![Vec::new(); n + m];
    let mut out_count = vec![0usize; n + m];
    for (k, e) in g.edges().iter().enumerate() {
        for &s in &e.sources {
            push_arc(&mut incoming[n + k], s);
            out_count[s] += 1;
        }
        for &t in &e.targets {
            push_arc(&mut incoming[t], n + k);
            out_count[n + k] += 1;
        }
    }
    // Kahn order over the dag.
    let mut indeg: Vec<usize> = incoming
        .iter()
        .map(|arcs| arcs.iter().map(|&(_, mult)| mult as usize).sum())
        .collect();
    let mut queue: Vec<usize> = (0..n + m).filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(n + m);
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        order.push(x);
        let mut outs: Vec<usize> = if x < n {
            g.out_edges(x).map(|k| n + k).collect()
        } else {
            g.edges()[x - n].targets.clone()
        };
        outs.sort_unstable();
        outs.dedup();
        for y in outs {
            let mult = arc_multiplicity(g, n, x, y);
            indeg[y] -= mult;
            if indeg[y] == 0 {
                queue.push(y);
            }
        }
    }
    if order.len() != n + m {
        return Err(MetricError::Cyclic);
    }

    let mut ways = vec![0u128; n + m];
    let mut total = 0u128;
    for &x in &order {
        let seeded = if x < n { seed_nodes[x] } else { seed_edges[x - n] };
        let mut w = u128::from(seeded);
        for &(y, mult) in &incoming[x] {
            w += ways[y] * mult;
        }
        ways[x] = w;
        let sink = if x < n { sink_nodes[x] } else { sink_edges[x - n] };
        if sink {
            total += w;
        }
    }
    Ok(total)
}

fn push_arc(arcs: &mut Vec<(usize, u128)>, from: usize) {
    match arcs.iter_mut().find(|(y, _)| *y == from) {
        Some((_, mult)) => *mult += 1,
        None => arcs.push((from, 1)),
    }
}

fn arc_multiplicity(g: &Hypergraph, n: usize, from: usize, to: usize) -> usize {
    if from < n {
        g.edges()[to - n].sources.iter().filter(|&&s| s == from).count()
    } else {
        g.edges()[from - n].targets.iter().filter(|&&t| t == to).count()
    }
}

/// Size of the maximal tree of `mu` edges whose output is `x`.
fn mu_tree_size(g: &Hypergraph, x: NodeId, memo: &mut [Option<u64>]) -> u64 {
    if let Some(s) = memo[x] {
        return s;
    }
    let size = match g.in_edges(x).next() {
        Some(k) if g.edges()[k].label == MU => {
            1 + g.edges()[k]
                .sources
                .clone()
                .iter()
                .map(|&s| mu_tree_size(g, s, memo))
                .sum::<u64>()
        }
        _ => 0,
    };
    memo[x] = Some(size);
    size
}

/// Size of the maximal tree of `nu` edges whose input is `x`.
fn nu_tree_size(g: &Hypergraph, x: NodeId, memo: &mut [Option<u64>]) -> u64 {
    if let Some(s) = memo[x] {
        return s;
    }
    let size = match g.out_edges(x).next() {
        Some(k) if g.edges()[k].label == NU => {
            1 + g.edges()[k]
                .targets
                .clone()
                .iter()
                .map(|&t| nu_tree_size(g, t, memo))
                .sum::<u64>()
        }
        _ => 0,
    };
    memo[x] = Some(size);
    size
}

/// L-weight of one edge: for a `mu` edge the size of the `mu`-tree hanging
/// off its first source, for a `nu` edge the `nu`-tree at its first target,
/// zero otherwise.
pub fn l_weight(g: &Hypergraph, k: EdgeId) -> u64 {
    let e = &g.edges()[k];
    if e.label == MU {
        let mut memo = vec![None; g.node_count()];
        e.sources
            .first()
            .map_or(0, |&s| mu_tree_size(g, s, &mut memo))
    } else if e.label == NU {
        let mut memo = vec![None; g.node_count()];
        e.targets
            .first()
            .map_or(0, |&t| nu_tree_size(g, t, &mut memo))
    } else {
        0
    }
}

pub fn l_weight_sum(g: &Hypergraph) -> u64 {
    (0..g.edge_count()).map(|k| l_weight(g, k)).sum()
}

/// The full five-component measure of an MDA host.
pub fn metric(host: &InterfacedGraph) -> Result<NbMetric, MetricError> {
    if !host.is_mda() {
        return Err(MetricError::NotMda);
    }
    Ok(NbMetric {
        u_paths: count_u_paths(host)?,
        m_paths: count_m_paths(host)?,
        mu_count: count_label(&host.graph, MU),
        nu_count: count_label(&host.graph, NU),
        l_weight_sum: l_weight_sum(&host.graph),
    })
}

fn count_label(g: &Hypergraph, label: &str) -> u64 {
    g.edges().iter().filter(|e| e.label == label).count() as u64
}

/// Whether every edge label belongs to the bimonoid signature with the
/// right arities.
pub fn is_nb_graph(g: &Hypergraph) -> bool {
    g.validate_against(&nb_signature()).is_ok()
}

/// The metric before and after one step, and whether it went down.
#[derive(Debug, Clone)]
pub struct TraceStepReport {
    pub rule_name: String,
    pub before: NbMetric,
    pub after: NbMetric,
    pub decreased: bool,
}

#[derive(Debug, Clone)]
pub struct TraceReport {
    pub steps: Vec<TraceStepReport>,
    pub first_violation: Option<usize>,
}

impl TraceReport {
    pub fn all_decreasing(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Verify that the metric strictly decreases along a recorded trace.
pub fn check_trace_decreasing(trace: &[RewriteStepRecord]) -> Result<TraceReport, MetricError> {
    let mut steps = Vec::with_capacity(trace.len());
    let mut first_violation = None;
    for (k, record) in trace.iter().enumerate() {
        let before = metric(&record.before)?;
        let after = metric(&record.after)?;
        let decreased = less_than(&after, &before);
        if !decreased && first_violation.is_none() {
            first_violation = Some(k);
        }
        steps.push(TraceStepReport {
            rule_name: record.rule_name.clone(),
            before,
            after,
            decreased,
        });
    }
    Ok(TraceReport {
        steps,
        first_violation,
    })
}
