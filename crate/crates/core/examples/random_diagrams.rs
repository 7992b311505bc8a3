//! Seeded random diagram generation and Graphviz export, the ingredients
//! of the property-test harnesses.
//!
//! ```sh
//! cargo run --example random_diagrams
//! ```

use diagram_rewriter::dot::to_dot;
use diagram_rewriter::generate::{random_mda, shuffle_term};
use diagram_rewriter::nb::nb_signature;
use diagram_rewriter::readback::readback_mda;
use diagram_rewriter::rng::SplitMix64;
use diagram_rewriter::term::{interpret, Mode};

fn main() {
    let sig = nb_signature();
    let mut rng = SplitMix64::new(2024);

    let (term, diagram) = random_mda(&sig, &mut rng, 6);
    println!("generated term: {term}");
    println!(
        "diagram: {} nodes, {} edges, {} -> {}",
        diagram.graph.node_count(),
        diagram.graph.edge_count(),
        diagram.arity(),
        diagram.coarity()
    );

    // Shuffling by the monoidal laws changes the syntax, never the diagram.
    let shuffled = shuffle_term(&term, &sig, &mut rng, 5);
    let same = interpret(&shuffled, &sig, Mode::Smc)
        .unwrap()
        .iso_to(&diagram);
    println!("shuffled syntax: {shuffled}");
    println!("same diagram: {same}");
    println!("canonical readback: {}", readback_mda(&diagram).unwrap());

    println!("\nGraphviz:\n{}", to_dot(&diagram));
}
