//! Interfaced hypergraphs: a hypergraph together with ordered input and
//! output node lists, i.e. a cospan of graphs with discrete feet. These form
//! a PROP under composition (gluing by pushout) and tensor (disjoint union),
//! with identities, symmetries, and the four Frobenius generator cospans.

use std::collections::VecDeque;

use thiserror::Error;

use crate::hypergraph::{
    pushout, seeded_isomorphism, GraphError, Homomorphism, Hypergraph, NodeId,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CospanError {
    #[error("cannot compose: left has {left} outputs but right has {right} inputs")]
    InterfaceMismatch { left: usize, right: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which of the four Frobenius generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrobGen {
    /// 2 -> 1, both inputs on one node.
    Mul,
    /// 0 -> 1.
    Unit,
    /// 1 -> 2, both outputs on one node.
    Comul,
    /// 1 -> 0.
    Counit,
}

/// A hypergraph with an ordered input and output interface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterfacedGraph {
    pub graph: Hypergraph,
    pub inputs: Vec<NodeId>,
    pub outputs: Vec<NodeId>,
}

impl InterfacedGraph {
    pub fn new(
        graph: Hypergraph,
        inputs: Vec<NodeId>,
        outputs: Vec<NodeId>,
    ) -> Result<Self, GraphError> {
        for &v in inputs.iter().chain(outputs.iter()) {
            if v >= graph.node_count() {
                return Err(GraphError::InvalidNode {
                    node: v,
                    node_count: graph.node_count(),
                });
            }
        }
        Ok(InterfacedGraph {
            graph,
            inputs,
            outputs,
        })
    }

    /// The identity cospan on `n` wires.
    pub fn identity(n: usize) -> Self {
        let ids: Vec<NodeId> = (0..n).collect();
        InterfacedGraph {
            graph: Hypergraph::discrete(n),
            inputs: ids.clone(),
            outputs: ids,
        }
    }

    /// The symmetry `n + m -> m + n`: block swap of the interface.
    pub fn symmetry(n: usize, m: usize) -> Self {
        let inputs: Vec<NodeId> = (0..n + m).collect();
        let mut outputs: Vec<NodeId> = (n..n + m).collect();
        outputs.extend(0..n);
        InterfacedGraph {
            graph: Hypergraph::discrete(n + m),
            inputs,
            outputs,
        }
    }

    /// The cospan interpreting one Frobenius generator.
    pub fn frob_gen(which: FrobGen) -> Self {
        let one = Hypergraph::discrete(1);
        match which {
            FrobGen::Mul => InterfacedGraph {
                graph: one,
                inputs: vec![0, 0],
                outputs: vec![0],
            },
            FrobGen::Unit => InterfacedGraph {
                graph: one,
                inputs: vec![],
                outputs: vec![0],
            },
            FrobGen::Comul => InterfacedGraph {
                graph: one,
                inputs: vec![0],
                outputs: vec![0, 0],
            },
            FrobGen::Counit => InterfacedGraph {
                graph: one,
                inputs: vec![0],
                outputs: vec![],
            },
        }
    }

    /// The cospan of a single generator edge: `arity + coarity` nodes, the
    /// first block as inputs feeding the edge, the rest as its targets.
    pub fn generator(label: &str, arity: usize, coarity: usize) -> Self {
        let mut g = Hypergraph::discrete(arity + coarity);
        g.add_edge(
            label,
            (0..arity).collect(),
            (arity..arity + coarity).collect(),
        )
        .expect("generator endpoints in range");
        InterfacedGraph {
            graph: g,
            inputs: (0..arity).collect(),
            outputs: (arity..arity + coarity).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    pub fn coarity(&self) -> usize {
        self.outputs.len()
    }

    /// Sequential composition: glue `self`'s outputs to `other`'s inputs by
    /// pushout over the shared discrete interface, then renumber.
    pub fn compose(&self, other: &InterfacedGraph) -> Result<InterfacedGraph, CospanError> {
        if self.coarity() != other.arity() {
            return Err(CospanError::InterfaceMismatch {
                left: self.coarity(),
                right: other.arity(),
            });
        }
        let (glued, inj_left, inj_right) = pushout(
            self.coarity(),
            &self.graph,
            &other.graph,
            &self.outputs,
            &other.inputs,
        )?;
        let composed = InterfacedGraph {
            graph: glued,
            inputs: self.inputs.iter().map(|&v| inj_left.node_map[v]).collect(),
            outputs: other
                .outputs
                .iter()
                .map(|&v| inj_right.node_map[v])
                .collect(),
        };
        Ok(composed.renumbered())
    }

    /// Parallel composition: disjoint union, interfaces concatenated.
    pub fn tensor(&self, other: &InterfacedGraph) -> InterfacedGraph {
        let shift = self.graph.node_count();
        let mut g = self.graph.clone();
        for _ in 0..other.graph.node_count() {
            g.add_node();
        }
        for e in other.graph.edges() {
            g.add_edge(
                e.label.clone(),
                e.sources.iter().map(|&v| v + shift).collect(),
                e.targets.iter().map(|&v| v + shift).collect(),
            )
            .expect("tensor endpoints in range");
        }
        let mut inputs = self.inputs.clone();
        inputs.extend(other.inputs.iter().map(|&v| v + shift));
        let mut outputs = self.outputs.clone();
        outputs.extend(other.outputs.iter().map(|&v| v + shift));
        InterfacedGraph {
            graph: g,
            inputs,
            outputs,
        }
    }

    /// Legs mono, interior nodes have in/out-degree exactly 1, interface
    /// nodes degree 0 on the corresponding side.
    pub fn is_monogamous(&self) -> bool {
        if !distinct(&self.inputs) || !distinct(&self.outputs) {
            return false;
        }
        let in_set: Vec<bool> = membership(self.graph.node_count(), &self.inputs);
        let out_set: Vec<bool> = membership(self.graph.node_count(), &self.outputs);
        self.graph
            .all_degrees()
            .iter()
            .enumerate()
            .all(|(v, &(indeg, outdeg))| {
                indeg == if in_set[v] { 0 } else { 1 }
                    && outdeg == if out_set[v] { 0 } else { 1 }
            })
    }

    /// Monogamous directed acyclic: exactly the cospans that denote plain
    /// symmetric monoidal terms.
    pub fn is_mda(&self) -> bool {
        self.is_monogamous() && self.graph.is_acyclic()
    }

    /// Isomorphism of cospans: a graph isomorphism commuting with both
    /// interface lists positionally.
    pub fn iso_to(&self, other: &InterfacedGraph) -> bool {
        self.iso_map(other).is_some()
    }

    pub fn iso_map(&self, other: &InterfacedGraph) -> Option<Homomorphism> {
        if self.arity() != other.arity() || self.coarity() != other.coarity() {
            return None;
        }
        let pairs: Vec<(NodeId, NodeId)> = self
            .inputs
            .iter()
            .zip(other.inputs.iter())
            .chain(self.outputs.iter().zip(other.outputs.iter()))
            .map(|(&a, &b)| (a, b))
            .collect();
        seeded_isomorphism(&self.graph, &other.graph, pairs)
    }

    /// Renumber nodes by breadth-first discovery from the inputs (ties by
    /// current id), remaining nodes in ascending id order. Keeps compose
    /// results reproducible; idempotent.
    pub fn renumbered(&self) -> InterfacedGraph {
        let n = self.graph.node_count();
        let mut new_id = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue: VecDeque<NodeId> = VecDeque::new();
        for &v in &self.inputs {
            if new_id[v] == usize::MAX {
                new_id[v] = next;
                next += 1;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for k in 0..self.graph.edge_count() {
                let e = &self.graph.edges()[k];
                if e.sources.contains(&v) {
                    for &t in &e.targets {
                        if new_id[t] == usize::MAX {
                            new_id[t] = next;
                            next += 1;
                            queue.push_back(t);
                        }
                    }
                }
            }
        }
        for id in new_id.iter_mut() {
            if *id == usize::MAX {
                *id = next;
                next += 1;
            }
        }
        self.apply_renumbering(&new_id)
    }

    fn apply_renumbering(&self, new_id: &[usize]) -> InterfacedGraph {
        let mut g = Hypergraph::discrete(self.graph.node_count());
        for e in self.graph.edges() {
            g.add_edge(
                e.label.clone(),
                e.sources.iter().map(|&v| new_id[v]).collect(),
                e.targets.iter().map(|&v| new_id[v]).collect(),
            )
            .expect("renumbering endpoints in range");
        }
        InterfacedGraph {
            graph: g,
            inputs: self.inputs.iter().map(|&v| new_id[v]).collect(),
            outputs: self.outputs.iter().map(|&v| new_id[v]).collect(),
        }
    }

    /// A stable textual key: equal strings iff structurally equal values.
    pub fn fingerprint(&self) -> String {
        let mut s = format!("n{};i{:?};o{:?}", self.graph.node_count(), self.inputs, self.outputs);
        for e in self.graph.edges() {
            s.push_str(&format!(";{}{:?}{:?}", e.label, e.sources, e.targets));
        }
        s
    }
}

fn distinct(xs: &[NodeId]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    xs.iter().all(|&x| seen.insert(x))
}

fn membership(n: usize, xs: &[NodeId]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &x in xs {
        m[x] = true;
    }
    m
}
