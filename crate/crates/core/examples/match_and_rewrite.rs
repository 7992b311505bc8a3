//! Matching and single rewrite steps, in both flavours. Inserting a
//! generator on a closed wire has two unrestricted outcomes because the
//! rule's interface hits one node twice, so the pushout complement is not
//! unique; convex rewriting keeps only the one that stays a plain diagram.
//!
//! ```sh
//! cargo run --example match_and_rewrite
//! ```

use diagram_rewriter::dpo::{applicable_steps, find_matchings, rule_from_terms};
use diagram_rewriter::parser::parse_term;
use diagram_rewriter::readback::readback_frobenius;
use diagram_rewriter::signature::{Generator, Signature};
use diagram_rewriter::term::{interpret, Mode, RewriteRuleTerm};

fn main() {
    let sig = Signature::new(vec![
        Generator::new("e1", 0, 1),
        Generator::new("e2", 1, 0),
        Generator::new("e3", 1, 1),
    ])
    .unwrap();
    let rule_term = RewriteRuleTerm::new(
        "ins",
        parse_term("id 1").unwrap(),
        parse_term("e3").unwrap(),
    );
    let host = interpret(&parse_term("e1 ; e2").unwrap(), &sig, Mode::Smc).unwrap();
    println!("rule: id 1 => e3, host: e1 ; e2 (a closed loop of two edges)");

    let frob_rule = rule_from_terms(&rule_term, &sig, Mode::Frobenius).unwrap();
    println!(
        "mono matchings of the left side: {}",
        find_matchings(&frob_rule, &host, false).len()
    );

    let steps = applicable_steps(&host, &[frob_rule], Mode::Frobenius).unwrap();
    println!("\nunrestricted steps: {}", steps.len());
    for (k, step) in steps.iter().enumerate() {
        println!(
            "  outcome {k}: {} nodes, {} edges, plain diagram: {}, reads back as {}",
            step.after.graph.node_count(),
            step.after.graph.edge_count(),
            step.after.is_mda(),
            readback_frobenius(&step.after),
        );
    }

    let smc_rule = rule_from_terms(&rule_term, &sig, Mode::Smc).unwrap();
    let steps = applicable_steps(&host, &[smc_rule], Mode::Smc).unwrap();
    println!("\nconvex steps: {}", steps.len());
    for step in &steps {
        println!(
            "  outcome: reads back as {}",
            readback_frobenius(&step.after)
        );
    }
}
