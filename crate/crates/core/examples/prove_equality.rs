//! Bounded equality search: two terms are equal in a presented theory iff
//! one rewrites to the other under the symmetrized rules, so a bounded
//! bidirectional search over diagrams decides small instances.
//!
//! ```sh
//! cargo run --example prove_equality
//! ```

use diagram_rewriter::nb::{nb_rules, nb_signature};
use diagram_rewriter::parser::parse_term;
use diagram_rewriter::prove::{prove_equal, ProveOutcome};
use diagram_rewriter::term::Mode;

fn main() {
    let sig = nb_signature();
    let rules = nb_rules();

    let queries = [
        // A unit law, one step.
        ("(eta * id 1) ; mu", "id 1", 4),
        // Reassociating a four-leaf multiplication tree.
        (
            "(mu * id 1 ; mu) * id 1 ; mu",
            "id 1 * (id 1 * mu ; mu) ; mu",
            10,
        ),
        // The bimonoid law against its expanded form.
        (
            "mu ; nu",
            "(nu * nu) ; (id 1 * sym 1 1 * id 1) ; (mu * mu)",
            4,
        ),
        // Not provable: the multiplication is not commutative.
        ("mu", "sym 1 1 ; mu", 6),
    ];

    for (lhs, rhs, fuel) in queries {
        let t1 = parse_term(lhs).unwrap();
        let t2 = parse_term(rhs).unwrap();
        match prove_equal(&t1, &t2, &rules, &sig, Mode::Smc, fuel).unwrap() {
            ProveOutcome::Proved(steps) => {
                let names: Vec<String> = steps.iter().map(|s| s.to_string()).collect();
                println!("{lhs}  =  {rhs}");
                println!("  proved in {} step(s): [{}]\n", steps.len(), names.join(", "));
            }
            ProveOutcome::Inconclusive => {
                println!("{lhs}  =  {rhs}");
                println!("  inconclusive within fuel {fuel}\n");
            }
        }
    }
}
