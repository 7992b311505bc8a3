//! Why plain symmetric monoidal rewriting needs the convexity condition:
//! a rule's left side can appear as a mono subgraph that no term-level
//! match produces, because another edge sits on a path between its pieces.
//! The boundary complement even exists; convexity is what rules it out.
//!
//! ```sh
//! cargo run --example convexity
//! ```

use diagram_rewriter::dpo::{boundary_complement, find_matchings, rule_from_terms};
use diagram_rewriter::hypergraph::SubgraphSelection;
use diagram_rewriter::parser::parse_term;
use diagram_rewriter::signature::{Generator, Signature};
use diagram_rewriter::term::{interpret, Mode, RewriteRuleTerm};

fn main() {
    let sig = Signature::new(vec![
        Generator::new("e1", 2, 1),
        Generator::new("e2", 1, 2),
        Generator::new("e3", 1, 1),
        Generator::new("e4", 1, 1),
    ])
    .unwrap();
    let lhs = parse_term("(e2 * id 1) ; (id 1 * sym 1 1) ; (e1 * id 1)").unwrap();
    let rhs = parse_term("sym 1 1 ; (e4 * e4)").unwrap();
    let rule = rule_from_terms(
        &RewriteRuleTerm::new("swap", lhs, rhs),
        &sig,
        Mode::Smc,
    )
    .unwrap();

    // The host composes e2 and e1 with an e3 in between on one wire. The
    // rule's left side never occurs in it as a subterm.
    let host = interpret(
        &parse_term("e2 ; (id 1 * e3) ; e1").unwrap(),
        &sig,
        Mode::Smc,
    )
    .unwrap();

    let mono = find_matchings(&rule, &host, false);
    println!("mono matchings: {}", mono.len());
    for m in &mono {
        let image = SubgraphSelection::image_of(m, &rule.lhs);
        println!(
            "  image is convex: {}",
            host.graph.is_convex(&image).unwrap()
        );
        println!(
            "  boundary complement exists anyway: {}",
            boundary_complement(&rule, &host, m).is_ok()
        );
    }
    let convex = find_matchings(&rule, &host, true);
    println!("convex matchings: {}", convex.len());
    println!("=> the match is rejected by convexity alone, so the host is in normal form");
}
