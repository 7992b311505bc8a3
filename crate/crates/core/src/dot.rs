//! Graphviz export: wire nodes as points, hyperedges as labelled boxes,
//! interface positions as plaintext markers. Output is byte-deterministic.

use std::fmt::Write;

use crate::cospan::InterfacedGraph;

pub fn to_dot(c: &InterfacedGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph diagram {{");
    let _ = writeln!(s, "  rankdir=LR;");
    for v in c.graph.nodes() {
        let _ = writeln!(s, "  v{v} [shape=point];");
    }
    for (k, e) in c.graph.edges().iter().enumerate() {
        let _ = writeln!(s, "  e{k} [shape=box, label=\"{}\"];", e.label);
        for (p, &v) in e.sources.iter().enumerate() {
            let _ = writeln!(s, "  v{v} -> e{k} [label=\"{p}\"];");
        }
        for (p, &v) in e.targets.iter().enumerate() {
            let _ = writeln!(s, "  e{k} -> v{v} [label=\"{p}\"];");
        }
    }
    for (p, &v) in c.inputs.iter().enumerate() {
        let _ = writeln!(s, "  in{p} [shape=plaintext, label=\"in {p}\"];");
        let _ = writeln!(s, "  in{p} -> v{v} [style=dashed, arrowhead=none];");
    }
    for (p, &v) in c.outputs.iter().enumerate() {
        let _ = writeln!(s, "  out{p} [shape=plaintext, label=\"out {p}\"];");
        let _ = writeln!(s, "  v{v} -> out{p} [style=dashed, arrowhead=none];");
    }
    let _ = writeln!(s, "}}");
    s
}
