//! The special Frobenius structure: its equations, the compact-closed
//! cups and caps it induces, and the duality functor.
//!
//! ```sh
//! cargo run --example frobenius_structure
//! ```

use diagram_rewriter::parser::parse_term;
use diagram_rewriter::signature::{Generator, Signature};
use diagram_rewriter::term::{dual, expand_cup, interpret, Mode, Term};

fn main() {
    let sig = Signature::new(vec![Generator::new("f", 2, 1)]).unwrap();
    let check = |name: &str, lhs: &str, rhs: &str| {
        let l = interpret(&parse_term(lhs).unwrap(), &sig, Mode::Frobenius).unwrap();
        let r = interpret(&parse_term(rhs).unwrap(), &sig, Mode::Frobenius).unwrap();
        println!("{name:>22}:  {lhs}  =  {rhs}   [{}]", if l.iso_to(&r) { "holds" } else { "FAILS" });
    };

    println!("special Frobenius equations:");
    check("associativity", "(fmul * id 1) ; fmul", "(id 1 * fmul) ; fmul");
    check("commutativity", "sym 1 1 ; fmul", "fmul");
    check("unit", "(funit * id 1) ; fmul", "id 1");
    check("cocommutativity", "fcomul ; sym 1 1", "fcomul");
    check("counit", "fcomul ; (fcounit * id 1)", "id 1");
    check("frobenius", "(fcomul * id 1) ; (id 1 * fmul)", "fmul ; fcomul");
    check("special", "fcomul ; fmul", "id 1");

    println!("\nsnake equations (cups and caps cancel):");
    for n in 1..=3 {
        check(
            "snake",
            &format!("(cap {n} * id {n}) ; (id {n} * cup {n})"),
            &format!("id {n}"),
        );
    }
    println!("\ncup 2 unfolds to: {}", expand_cup(2));

    // Duality is an involution and swaps the multiplication with the
    // comultiplication.
    let f_dd = dual(&dual(&Term::gen("f"), &sig).unwrap(), &sig).unwrap();
    let same = interpret(&f_dd, &sig, Mode::Frobenius)
        .unwrap()
        .iso_to(&interpret(&Term::gen("f"), &sig, Mode::Frobenius).unwrap());
    println!("\ndual(dual(f)) = f   [{}]", if same { "holds" } else { "FAILS" });
}
