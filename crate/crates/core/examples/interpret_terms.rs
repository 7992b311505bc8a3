//! Parse a term, typecheck it against a signature, and interpret it as an
//! interfaced hypergraph.
//!
//! ```sh
//! cargo run --example interpret_terms
//! ```

use diagram_rewriter::json::to_json;
use diagram_rewriter::parser::parse_term;
use diagram_rewriter::signature::{Generator, Signature};
use diagram_rewriter::term::{interpret, typecheck, Mode};

fn main() {
    let sig = Signature::new(vec![
        Generator::new("mu", 2, 1),
        Generator::new("eta", 0, 1),
    ])
    .unwrap();

    // A three-input multiplication tree with a unit grafted on the left.
    let text = "(eta * id 2) ; (mu * id 1) ; mu";
    let term = parse_term(text).unwrap();
    let ty = typecheck(&term, &sig, Mode::Smc).unwrap();
    println!("term: {term}");
    println!("type: {ty}");

    let diagram = interpret(&term, &sig, Mode::Smc).unwrap();
    println!(
        "graph: {} nodes, {} hyperedges, monogamous acyclic: {}",
        diagram.graph.node_count(),
        diagram.graph.edge_count(),
        diagram.is_mda()
    );
    print!("{}", to_json(&diagram));
}
