//! Graphs denoting plain terms read back canonically: two syntactically
//! different but equal terms interpret to isomorphic graphs and come back
//! as the same term. Graphs that need the Frobenius structure read back
//! through the spider decomposition instead.
//!
//! ```sh
//! cargo run --example readback_roundtrip
//! ```

use diagram_rewriter::cospan::{FrobGen, InterfacedGraph};
use diagram_rewriter::parser::parse_term;
use diagram_rewriter::readback::{canonicalize, readback_frobenius, readback_mda};
use diagram_rewriter::signature::{Generator, Signature};
use diagram_rewriter::term::{interpret, Mode};

fn main() {
    let sig = Signature::new(vec![
        Generator::new("f", 1, 1),
        Generator::new("g", 1, 1),
    ])
    .unwrap();

    // The same diagram written two ways: interchange of ; and *.
    let t1 = parse_term("(f ; g) * (f ; g)").unwrap();
    let t2 = parse_term("(f * f) ; (g * g)").unwrap();
    let g1 = interpret(&t1, &sig, Mode::Smc).unwrap();
    let g2 = interpret(&t2, &sig, Mode::Smc).unwrap();
    println!("t1 = {t1}");
    println!("t2 = {t2}");
    println!("isomorphic interpretations: {}", g1.iso_to(&g2));

    let b1 = readback_mda(&g1).unwrap();
    let b2 = readback_mda(&g2).unwrap();
    println!("readback(t1) = {b1}");
    println!("readback(t2) = {b2}");
    println!("identical canonical terms: {}", b1 == b2);
    println!(
        "identical canonical graphs: {}",
        canonicalize(&g1) == canonicalize(&g2)
    );

    // A graph outside the plain image: the multiplication spider.
    let spider = InterfacedGraph::frob_gen(FrobGen::Mul);
    println!(
        "\nmultiplication spider as a plain term: {:?}",
        readback_mda(&spider).map(|t| t.to_string())
    );
    println!(
        "multiplication spider via Frobenius readback: {}",
        readback_frobenius(&spider)
    );
}
