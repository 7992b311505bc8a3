//! The laws of symmetric monoidal categories hold for free once diagrams
//! are stored combinatorially: both sides of each law interpret to
//! isomorphic graphs.
//!
//! ```sh
//! cargo run --example smc_laws
//! ```

use diagram_rewriter::parser::parse_term;
use diagram_rewriter::signature::{Generator, Signature};
use diagram_rewriter::term::{interpret, Mode};

fn main() {
    let sig = Signature::new(vec![
        Generator::new("f", 1, 1),
        Generator::new("g", 1, 1),
        Generator::new("h", 2, 1),
    ])
    .unwrap();

    let laws = [
        ("interchange", "(f ; g) * (g ; f)", "(f * g) ; (g * f)"),
        ("seq associativity", "(f ; g) ; f", "f ; (g ; f)"),
        ("par associativity", "(f * g) * h", "f * (g * h)"),
        ("units", "id 1 ; f ; id 1", "f"),
        ("sym involution", "sym 1 1 ; sym 1 1", "id 2"),
        ("sym naturality", "(h * id 1) ; sym 1 1", "sym 2 1 ; (id 1 * h)"),
    ];

    for (name, lhs, rhs) in laws {
        let l = interpret(&parse_term(lhs).unwrap(), &sig, Mode::Smc).unwrap();
        let r = interpret(&parse_term(rhs).unwrap(), &sig, Mode::Smc).unwrap();
        println!("{name:>18}:  {lhs}  =  {rhs}   [{}]", verdict(l.iso_to(&r)));
    }

    // The motivating failure of tree syntax: a match hidden by naturality.
    // As terms, `f * g` does not occur in the right-hand side below, but
    // the diagrams are identical.
    let a = interpret(
        &parse_term("(f * g) ; sym 1 1").unwrap(),
        &sig,
        Mode::Smc,
    )
    .unwrap();
    let b = interpret(
        &parse_term("sym 1 1 ; (g * f)").unwrap(),
        &sig,
        Mode::Smc,
    )
    .unwrap();
    println!(
        "\nnaturality hides subterms: (f * g); sym = sym; (g * f)   [{}]",
        verdict(a.iso_to(&b))
    );
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "FAILS"
    }
}
