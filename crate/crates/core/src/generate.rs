//! Seeded random generation of well-typed terms, diagrams and DAG
//! hypergraphs, used by the property suites and the `gen-random` command.

use crate::cospan::InterfacedGraph;
use crate::hypergraph::Hypergraph;
use crate::rng::SplitMix64;
use crate::signature::{Generator, Signature};
use crate::term::{interpret, typecheck, Mode, Term};

/// A random signature with `count` generators of arity and coarity at most
/// `max_arity`, at least one of them with nonzero arity and coarity.
pub fn random_signature(rng: &mut SplitMix64, count: usize, max_arity: usize) -> Signature {
    let mut gens = Vec::new();
    for k in 0..count.max(1) {
        let (arity, coarity) = if k == 0 {
            (1 + rng.below(max_arity), 1 + rng.below(max_arity))
        } else {
            (rng.below(max_arity + 1), rng.below(max_arity + 1))
        };
        gens.push(Generator::new(format!("g{k}"), arity, coarity));
    }
    Signature::new(gens).expect("generated names distinct")
}

/// Grow a random well-typed term with roughly `target_gens` generator
/// occurrences by stacking random layers and parallel atoms.
pub fn random_term(sig: &Signature, rng: &mut SplitMix64, target_gens: usize) -> Term {
    let mut t = random_atom(sig, rng);
    let mut guard = 0;
    while t.generator_count() < target_gens && guard < 10 * (target_gens + 1) {
        guard += 1;
        let ty = typecheck(&t, sig, Mode::Smc).expect("generated terms stay well-typed");
        if rng.chance(2, 3) {
            if let Some(layer) = random_layer(sig, rng, ty.cod) {
                t = Term::seq(t, layer);
                continue;
            }
        }
        let atom = random_atom(sig, rng);
        t = if rng.chance(1, 2) {
            Term::par(t, atom)
        } else {
            Term::par(atom, t)
        };
    }
    t
}

fn random_atom(sig: &Signature, rng: &mut SplitMix64) -> Term {
    if !sig.generators().is_empty() && rng.chance(3, 4) {
        Term::gen(&rng.pick(sig.generators()).name)
    } else {
        match rng.below(3) {
            0 => Term::Id(1 + rng.below(2)),
            1 => Term::Sym(1, 1),
            _ => Term::Id(1),
        }
    }
}

/// A one-deep layer of width exactly `width`: a tensor of generators,
/// identities and symmetries consuming all wires. `None` when `width` is 0
/// and the signature offers nothing that starts from 0.
fn random_layer(sig: &Signature, rng: &mut SplitMix64, width: usize) -> Option<Term> {
    let mut parts: Vec<Term> = Vec::new();
    let mut remaining = width;
    if remaining == 0 {
        let sources: Vec<&Generator> =
            sig.generators().iter().filter(|g| g.arity == 0).collect();
        if sources.is_empty() || rng.chance(1, 2) {
            return None;
        }
        return Some(Term::gen(&rng.pick(&sources).name));
    }
    while remaining > 0 {
        let fitting: Vec<&Generator> = sig
            .generators()
            .iter()
            .filter(|g| g.arity <= remaining && g.arity > 0)
            .collect();
        let choice = rng.below(4);
        if choice == 0 && !fitting.is_empty() {
            let g = rng.pick(&fitting);
            parts.push(Term::gen(&g.name));
            remaining -= g.arity;
        } else if choice == 1 && remaining >= 2 {
            parts.push(Term::Sym(1, 1));
            remaining -= 2;
        } else {
            let w = 1 + rng.below(remaining);
            parts.push(Term::Id(w));
            remaining -= w;
        }
    }
    Some(Term::par_all(parts))
}

/// Interpret a random term: a random monogamous directed acyclic diagram
/// with at most `max_edges` hyperedges.
pub fn random_mda(
    sig: &Signature,
    rng: &mut SplitMix64,
    max_edges: usize,
) -> (Term, InterfacedGraph) {
    loop {
        let t = random_term(sig, rng, max_edges.max(1));
        let g = interpret(&t, sig, Mode::Smc).expect("generated terms are well-typed");
        if g.graph.edge_count() <= max_edges {
            return (t, g);
        }
    }
}

/// Apply `steps` random symmetric-monoidal-law reshapings that keep the
/// interpretation isomorphic: reassociation, interchange and identity
/// padding, in both directions.
pub fn shuffle_term(t: &Term, sig: &Signature, rng: &mut SplitMix64, steps: usize) -> Term {
    let mut current = t.clone();
    for _ in 0..steps {
        current = shuffle_once(&current, sig, rng);
    }
    current
}

fn shuffle_once(t: &Term, sig: &Signature, rng: &mut SplitMix64) -> Term {
    // Pick a random node of the syntax tree and try a law there; recurse
    // into children otherwise.
    if rng.chance(1, 3) {
        if let Some(u) = apply_law(t, sig, rng) {
            return u;
        }
    }
    match t {
        Term::Seq(a, b) => {
            if rng.chance(1, 2) {
                Term::seq(shuffle_once(a, sig, rng), (**b).clone())
            } else {
                Term::seq((**a).clone(), shuffle_once(b, sig, rng))
            }
        }
        Term::Par(a, b) => {
            if rng.chance(1, 2) {
                Term::par(shuffle_once(a, sig, rng), (**b).clone())
            } else {
                Term::par((**a).clone(), shuffle_once(b, sig, rng))
            }
        }
        _ => apply_law(t, sig, rng).unwrap_or_else(|| t.clone()),
    }
}

fn apply_law(t: &Term, sig: &Signature, rng: &mut SplitMix64) -> Option<Term> {
    let ty = typecheck(t, sig, Mode::Smc).ok()?;
    let candidates: Vec<Term> = law_images(t, sig, ty.dom, ty.cod);
    if candidates.is_empty() {
        return None;
    }
    Some(rng.pick(&candidates).clone())
}

fn law_images(t: &Term, sig: &Signature, dom: usize, cod: usize) -> Vec<Term> {
    let mut out = Vec::new();
    match t {
        Term::Seq(a, b) => {
            // Associativity.
            if let Term::Seq(a1, a2) = &**a {
                out.push(Term::seq((**a1).clone(), Term::seq((**a2).clone(), (**b).clone())));
            }
            if let Term::Seq(b1, b2) = &**b {
                out.push(Term::seq(Term::seq((**a).clone(), (**b1).clone()), (**b2).clone()));
            }
            // Interchange, when the parallel splits line up.
            if let (Term::Par(a1, a2), Term::Par(b1, b2)) = (&**a, &**b) {
                let aligned = typecheck(a1, sig, Mode::Smc)
                    .and_then(|t1| typecheck(b1, sig, Mode::Smc).map(|t2| t1.cod == t2.dom));
                if aligned == Ok(true) {
                    out.push(Term::par(
                        Term::seq((**a1).clone(), (**b1).clone()),
                        Term::seq((**a2).clone(), (**b2).clone()),
                    ));
                }
            }
            // Identity absorption.
            if matches!(**a, Term::Id(_)) {
                out.push((**b).clone());
            }
            if matches!(**b, Term::Id(_)) {
                out.push((**a).clone());
            }
        }
        Term::Par(a, b) => {
            if let Term::Par(a1, a2) = &**a {
                out.push(Term::par((**a1).clone(), Term::par((**a2).clone(), (**b).clone())));
            }
            if let Term::Par(b1, b2) = &**b {
                out.push(Term::par(Term::par((**a).clone(), (**b1).clone()), (**b2).clone()));
            }
            if let (Term::Seq(a1, a2), Term::Seq(b1, b2)) = (&**a, &**b) {
                out.push(Term::seq(
                    Term::par((**a1).clone(), (**b1).clone()),
                    Term::par((**a2).clone(), (**b2).clone()),
                ));
            }
            if matches!(**a, Term::Id(0)) {
                out.push((**b).clone());
            }
            if matches!(**b, Term::Id(0)) {
                out.push((**a).clone());
            }
        }
        _ => {}
    }
    // Identity padding is always available.
    out.push(Term::seq(Term::Id(dom), t.clone()));
    out.push(Term::seq(t.clone(), Term::Id(cod)));
    out.push(Term::par(t.clone(), Term::Id(0)));
    out.push(Term::par(Term::Id(0), t.clone()));
    out
}

/// A random acyclic hypergraph that need not be monogamous: nodes carry
/// ranks, every edge points from lower to higher ranks. Labels follow the
/// signature arities. Interfaces are arbitrary subsets.
pub fn random_dag(
    sig: &Signature,
    rng: &mut SplitMix64,
    max_nodes: usize,
    max_edges: usize,
) -> InterfacedGraph {
    let n = 1 + rng.below(max_nodes.max(1));
    let mut g = Hypergraph::discrete(n);
    let edge_count = rng.below(max_edges + 1);
    for _ in 0..edge_count {
        let gen = rng.pick(sig.generators()).clone();
        // Rank boundary: sources strictly below, targets at or above.
        let r = 1 + rng.below(n);
        if r < gen.arity.min(1) {
            continue;
        }
        let sources: Vec<usize> = (0..gen.arity).map(|_| rng.below(r)).collect();
        if n == r && gen.coarity > 0 {
            continue;
        }
        let targets: Vec<usize> = (0..gen.coarity).map(|_| r + rng.below(n - r)).collect();
        g.add_edge(gen.name.clone(), sources, targets)
            .expect("ranked endpoints in range");
    }
    let inputs: Vec<usize> = (0..n).filter(|_| rng.chance(1, 3)).collect();
    let outputs: Vec<usize> = (0..n).filter(|_| rng.chance(1, 3)).collect();
    InterfacedGraph::new(g, inputs, outputs).expect("interfaces in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_terms_typecheck_and_interpret_mda() {
        let mut rng = SplitMix64::new(1);
        for round in 0..50 {
            let sig = random_signature(&mut rng, 1 + round % 4, 3);
            let t = random_term(&sig, &mut rng, 8);
            let ty = typecheck(&t, &sig, Mode::Smc).unwrap();
            let g = interpret(&t, &sig, Mode::Smc).unwrap();
            assert_eq!(g.arity(), ty.dom);
            assert_eq!(g.coarity(), ty.cod);
            assert!(g.is_mda(), "random term not MDA: {t}");
        }
    }

    #[test]
    fn shuffles_preserve_iso_class() {
        let mut rng = SplitMix64::new(2);
        for _ in 0..30 {
            let sig = random_signature(&mut rng, 3, 3);
            let t = random_term(&sig, &mut rng, 6);
            let u = shuffle_term(&t, &sig, &mut rng, 8);
            let gt = interpret(&t, &sig, Mode::Smc).unwrap();
            let gu = interpret(&u, &sig, Mode::Smc).unwrap();
            assert!(gt.iso_to(&gu), "shuffle changed the diagram: {t} vs {u}");
        }
    }

    #[test]
    fn random_dags_are_acyclic() {
        let mut rng = SplitMix64::new(3);
        let sig = random_signature(&mut rng, 4, 3);
        for _ in 0..50 {
            let g = random_dag(&sig, &mut rng, 6, 10);
            assert!(g.graph.is_acyclic());
        }
    }
}
