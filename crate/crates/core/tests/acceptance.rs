//! The acceptance suite: one test per criterion, each printing a PASS line
//! with the counts it verified. Run with `cargo test --test acceptance`.

mod common;

use std::collections::BTreeSet;

use diagram_rewriter::cospan::{FrobGen, InterfacedGraph};
use diagram_rewriter::dpo::{
    applicable_steps, boundary_complement, find_matchings, is_boundary, normalize,
    pushout_complements, rule_from_terms, DpoRule, NormalizeOutcome, RewriteStepRecord, Strategy,
};
use diagram_rewriter::factorize::convex_factorize;
use diagram_rewriter::generate::{random_dag, random_signature, random_term, shuffle_term};
use diagram_rewriter::hypergraph::SubgraphSelection;
use diagram_rewriter::nb::{
    count_m_paths, count_u_paths, metric, nb_rules, nb_signature, nb_system,
};
use diagram_rewriter::readback::{canonicalize, readback_mda};
use diagram_rewriter::rng::SplitMix64;
use diagram_rewriter::signature::{Generator, Signature};
use diagram_rewriter::term::{interpret, typecheck, Mode, RewriteRuleTerm, Term};

fn interp(t: &Term, sig: &Signature) -> InterfacedGraph {
    interpret(t, sig, Mode::Smc).expect("test term is well-typed")
}

/// A random term with a fixed domain, grown by sequential layers only.
fn random_term_from(
    sig: &Signature,
    rng: &mut SplitMix64,
    dom: usize,
    layers: usize,
) -> Term {
    let mut t = Term::Id(dom);
    for _ in 0..layers {
        let ty = typecheck(&t, sig, Mode::Smc).unwrap();
        match random_layer_for(sig, rng, ty.cod) {
            Some(layer) => t = Term::seq(t, layer),
            None => break,
        }
    }
    t
}

fn random_layer_for(sig: &Signature, rng: &mut SplitMix64, width: usize) -> Option<Term> {
    if width == 0 {
        let sources: Vec<&Generator> =
            sig.generators().iter().filter(|g| g.arity == 0).collect();
        if sources.is_empty() {
            return None;
        }
        return Some(Term::gen(&rng.pick(&sources).name));
    }
    let mut parts = Vec::new();
    let mut remaining = width;
    while remaining > 0 {
        let fitting: Vec<&Generator> = sig
            .generators()
            .iter()
            .filter(|g| g.arity > 0 && g.arity <= remaining)
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

/// Criterion 1: interpretations of random terms are monogamous directed
/// acyclic, read back to terms that reinterpret isomorphically, and
/// isomorphic interpretations have identical canonical forms.
#[test]
fn criterion_1_round_trip() {
    let mut rng = SplitMix64::new(0x01);
    let rounds = 500;
    for round in 0..rounds {
        let sig = random_signature(&mut rng, 1 + round % 5, 3);
        let t = random_term(&sig, &mut rng, 1 + round % 12);
        let g = interp(&t, &sig);
        assert!(g.is_mda(), "round {round}: interpretation not MDA for {t}");

        let back = readback_mda(&g).expect("MDA readback succeeds");
        let regen = interp(&back, &sig);
        assert!(
            regen.iso_to(&g),
            "round {round}: readback of {t} gave {back}, which reinterprets differently"
        );

        let shuffled = shuffle_term(&t, &sig, &mut rng, 6);
        let g2 = interp(&shuffled, &sig);
        assert!(g2.iso_to(&g), "round {round}: shuffle changed the diagram");
        assert_eq!(
            readback_mda(&g).unwrap(),
            readback_mda(&g2).unwrap(),
            "round {round}: isomorphic interpretations read back differently"
        );
        assert_eq!(
            canonicalize(&g),
            canonicalize(&g2),
            "round {round}: canonical forms differ for isomorphic interpretations"
        );
    }
    println!("criterion 1 (round trip, {rounds} random terms): PASS");
}

/// Criterion 2: the seven symmetric monoidal law schemas hold under
/// interpretation up to cospan isomorphism.
#[test]
fn criterion_2_smc_laws() {
    let mut rng = SplitMix64::new(0x02);
    let rounds = 200;
    for round in 0..rounds {
        let sig = random_signature(&mut rng, 1 + round % 4, 3);
        let a = random_term(&sig, &mut rng, 3);
        let ta = typecheck(&a, &sig, Mode::Smc).unwrap();
        let b = random_term_from(&sig, &mut rng, ta.cod, 2);
        let tb = typecheck(&b, &sig, Mode::Smc).unwrap();
        let c = random_term_from(&sig, &mut rng, tb.cod, 2);
        let d = random_term(&sig, &mut rng, 2);
        let td = typecheck(&d, &sig, Mode::Smc).unwrap();
        let e = random_term_from(&sig, &mut rng, td.cod, 2);

        // 1. Sequential associativity.
        let lhs = interp(
            &Term::seq(Term::seq(a.clone(), b.clone()), c.clone()),
            &sig,
        );
        let rhs = interp(
            &Term::seq(a.clone(), Term::seq(b.clone(), c.clone())),
            &sig,
        );
        assert!(lhs.iso_to(&rhs), "seq associativity failed at {round}");

        // 2. Sequential units.
        let l = interp(&Term::seq(Term::Id(ta.dom), a.clone()), &sig);
        let r = interp(&Term::seq(a.clone(), Term::Id(ta.cod)), &sig);
        let plain = interp(&a, &sig);
        assert!(l.iso_to(&plain) && r.iso_to(&plain), "seq units failed at {round}");

        // 3. Parallel associativity.
        let lhs = interp(
            &Term::par(Term::par(a.clone(), d.clone()), c.clone()),
            &sig,
        );
        let rhs = interp(
            &Term::par(a.clone(), Term::par(d.clone(), c.clone())),
            &sig,
        );
        assert!(lhs.iso_to(&rhs), "par associativity failed at {round}");

        // 4. Parallel units.
        let l = interp(&Term::par(Term::Id(0), a.clone()), &sig);
        let r = interp(&Term::par(a.clone(), Term::Id(0)), &sig);
        assert!(l.iso_to(&plain) && r.iso_to(&plain), "par units failed at {round}");

        // 5. Interchange.
        let lhs = interp(
            &Term::par(
                Term::seq(a.clone(), b.clone()),
                Term::seq(d.clone(), e.clone()),
            ),
            &sig,
        );
        let rhs = interp(
            &Term::seq(
                Term::par(a.clone(), d.clone()),
                Term::par(b.clone(), e.clone()),
            ),
            &sig,
        );
        assert!(lhs.iso_to(&rhs), "interchange failed at {round}");

        // 6. The symmetry is an involution.
        let ss = interp(&Term::seq(Term::Sym(1, 1), Term::Sym(1, 1)), &sig);
        assert!(ss.iso_to(&InterfacedGraph::identity(2)), "sym involution failed");

        // 7. Naturality of the symmetry.
        let z = round % 3;
        let lhs = interp(
            &Term::seq(
                Term::par(a.clone(), Term::Id(z)),
                Term::Sym(ta.cod, z),
            ),
            &sig,
        );
        let rhs = interp(
            &Term::seq(
                Term::Sym(ta.dom, z),
                Term::par(Term::Id(z), a.clone()),
            ),
            &sig,
        );
        assert!(lhs.iso_to(&rhs), "sym naturality failed at {round}");
    }
    println!("criterion 2 (seven SMC law schemas x {rounds} tuples): PASS");
}

/// Criterion 3: the special Frobenius equations and the snake equations.
#[test]
fn criterion_3_frobenius_laws() {
    let sig = Signature::empty();
    let f = |t: &Term| interpret(t, &sig, Mode::Frobenius).unwrap();
    let id1 = InterfacedGraph::identity(1);
    let mul = Term::FMul;
    let unit = Term::FUnit;
    let comul = Term::FComul;
    let counit = Term::FCounit;

    let mut checks = 0;
    let mut assert_law = |name: &str, lhs: Term, rhs: Term| {
        assert!(f(&lhs).iso_to(&f(&rhs)), "{name} failed");
        checks += 1;
    };

    assert_law(
        "associativity",
        Term::seq(Term::par(mul.clone(), Term::Id(1)), mul.clone()),
        Term::seq(Term::par(Term::Id(1), mul.clone()), mul.clone()),
    );
    assert_law(
        "commutativity",
        Term::seq(Term::Sym(1, 1), mul.clone()),
        mul.clone(),
    );
    assert_law(
        "unit",
        Term::seq(Term::par(unit.clone(), Term::Id(1)), mul.clone()),
        Term::Id(1),
    );
    assert_law(
        "coassociativity",
        Term::seq(comul.clone(), Term::par(comul.clone(), Term::Id(1))),
        Term::seq(comul.clone(), Term::par(Term::Id(1), comul.clone())),
    );
    assert_law(
        "cocommutativity",
        Term::seq(comul.clone(), Term::Sym(1, 1)),
        comul.clone(),
    );
    assert_law(
        "counit",
        Term::seq(comul.clone(), Term::par(counit.clone(), Term::Id(1))),
        Term::Id(1),
    );
    assert_law(
        "frobenius left",
        Term::seq(
            Term::par(comul.clone(), Term::Id(1)),
            Term::par(Term::Id(1), mul.clone()),
        ),
        Term::seq(mul.clone(), comul.clone()),
    );
    assert_law(
        "frobenius right",
        Term::seq(
            Term::par(Term::Id(1), comul.clone()),
            Term::par(mul.clone(), Term::Id(1)),
        ),
        Term::seq(mul.clone(), comul.clone()),
    );
    assert_law(
        "special",
        Term::seq(comul.clone(), mul.clone()),
        Term::Id(1),
    );
    assert!(f(&Term::seq(comul.clone(), mul.clone())).iso_to(&id1));

    for n in 0..=3 {
        let idn = InterfacedGraph::identity(n);
        let left = f(&Term::seq(
            Term::par(Term::Cap(n), Term::Id(n)),
            Term::par(Term::Id(n), Term::Cup(n)),
        ));
        let right = f(&Term::seq(
            Term::par(Term::Id(n), Term::Cap(n)),
            Term::par(Term::Cup(n), Term::Id(n)),
        ));
        assert!(left.iso_to(&idn), "left snake failed at n = {n}");
        assert!(right.iso_to(&idn), "right snake failed at n = {n}");
        checks += 2;
    }
    println!("criterion 3 (Frobenius + snake equations, {checks} identities): PASS");
}

fn insertion_setup() -> (Signature, DpoRule, DpoRule, InterfacedGraph) {
    let sig = Signature::new(vec![
        Generator::new("e1", 0, 1),
        Generator::new("e2", 1, 0),
        Generator::new("e3", 1, 1),
    ])
    .unwrap();
    let rule_term = RewriteRuleTerm::new("ins", Term::Id(1), Term::gen("e3"));
    let frob_rule = rule_from_terms(&rule_term, &sig, Mode::Frobenius).unwrap();
    let smc_rule = rule_from_terms(&rule_term, &sig, Mode::Smc).unwrap();
    let host = interp(&Term::seq(Term::gen("e1"), Term::gen("e2")), &sig);
    (sig, frob_rule, smc_rule, host)
}

/// Criterion 4: inserting a generator on a closed wire has exactly two
/// unrestricted outcomes (the straight one and the twisted one needing the
/// Frobenius structure), and exactly one convex outcome.
#[test]
fn criterion_4_multiple_complements() {
    let (sig, frob_rule, smc_rule, host) = insertion_setup();
    let frob_steps = applicable_steps(&host, &[frob_rule], Mode::Frobenius).unwrap();
    let outcomes = common::dedupe_by_iso(frob_steps.iter().map(|s| s.after.clone()).collect());
    assert_eq!(outcomes.len(), 2, "expected exactly two unrestricted outcomes");

    let straight = interp(
        &Term::seq(Term::gen("e1"), Term::seq(Term::gen("e3"), Term::gen("e2"))),
        &sig,
    );
    assert_eq!(
        outcomes.iter().filter(|o| o.iso_to(&straight)).count(),
        1,
        "the straight chain must be one of the two"
    );
    let twisted = outcomes.iter().find(|o| !o.iso_to(&straight)).unwrap();
    assert!(!twisted.is_mda(), "the other outcome needs the Frobenius structure");

    let smc_steps = applicable_steps(&host, &[smc_rule], Mode::Smc).unwrap();
    let smc_outcomes =
        common::dedupe_by_iso(smc_steps.iter().map(|s| s.after.clone()).collect());
    assert_eq!(smc_outcomes.len(), 1, "convex rewriting gives exactly one outcome");
    assert!(smc_outcomes[0].iso_to(&straight));
    println!("criterion 4 (complement multiplicity regression): PASS");
}

fn nonconvex_setup() -> (Signature, DpoRule, InterfacedGraph) {
    let sig = Signature::new(vec![
        Generator::new("e1", 2, 1),
        Generator::new("e2", 1, 2),
        Generator::new("e3", 1, 1),
        Generator::new("e4", 1, 1),
    ])
    .unwrap();
    let lhs = Term::seq(
        Term::par(Term::gen("e2"), Term::Id(1)),
        Term::seq(
            Term::par(Term::Id(1), Term::Sym(1, 1)),
            Term::par(Term::gen("e1"), Term::Id(1)),
        ),
    );
    let rhs = Term::seq(Term::Sym(1, 1), Term::par(Term::gen("e4"), Term::gen("e4")));
    let rule = rule_from_terms(&RewriteRuleTerm::new("swap", lhs, rhs), &sig, Mode::Smc).unwrap();
    let host = interp(
        &Term::seq(
            Term::gen("e2"),
            Term::seq(Term::par(Term::Id(1), Term::gen("e3")), Term::gen("e1")),
        ),
        &sig,
    );
    (sig, rule, host)
}

/// Criterion 5: the non-convex matching regression: the mono match exists
/// (and even has a boundary complement) but is not convex, so convex
/// rewriting does not touch the host.
#[test]
fn criterion_5_nonconvex_match() {
    let (_sig, rule, host) = nonconvex_setup();
    let mono = find_matchings(&rule, &host, false);
    assert_eq!(mono.len(), 1, "exactly one mono match");
    let convex = find_matchings(&rule, &host, true);
    assert_eq!(convex.len(), 0, "no convex matches");

    // The boundary complement itself exists; convexity is the failing
    // condition, not the complement.
    assert!(boundary_complement(&rule, &host, &mono[0]).is_ok());

    let (result, trace, outcome) = normalize(
        &host,
        std::slice::from_ref(&rule),
        Mode::Smc,
        10,
        Strategy::Deterministic,
    )
    .unwrap();
    assert_eq!(outcome, NormalizeOutcome::NormalForm);
    assert!(trace.is_empty());
    assert!(result.iso_to(&host));
    println!("criterion 5 (non-convex matching regression): PASS");
}

/// Plant `middle` into a random context so matches are guaranteed.
fn plant(
    sig: &Signature,
    rng: &mut SplitMix64,
    middle: &Term,
) -> Term {
    let mt = typecheck(middle, sig, Mode::Smc).unwrap();
    let pre0 = random_term(sig, rng, 2);
    let pt = typecheck(&pre0, sig, Mode::Smc).unwrap();
    let (pre, spare) = if pt.cod >= mt.dom {
        (pre0, pt.cod - mt.dom)
    } else {
        (Term::par(pre0, Term::Id(mt.dom - pt.cod)), 0)
    };
    let mid = if spare > 0 {
        Term::par(Term::Id(spare), middle.clone())
    } else {
        middle.clone()
    };
    let post = random_term_from(sig, rng, spare + mt.cod, 2);
    Term::seq(Term::seq(pre, mid), post)
}

/// Criterion 6: whenever the direct boundary complement construction
/// succeeds, it is the unique pushout complement satisfying the boundary
/// conditions.
#[test]
fn criterion_6_boundary_uniqueness() {
    let mut rng = SplitMix64::new(0x06);
    let want = 300;
    let mut verified = 0;
    let mut attempts = 0;
    while verified < want {
        attempts += 1;
        assert!(attempts < 40 * want, "instance generation stalled");
        let sig = random_signature(&mut rng, 1 + attempts % 4, 3);
        let lhs = random_term(&sig, &mut rng, 1 + attempts % 3);
        let rule = match rule_from_terms(
            &RewriteRuleTerm::new("probe", lhs.clone(), lhs.clone()),
            &sig,
            Mode::Smc,
        ) {
            Ok(r) => r,
            Err(_) => continue,
        };
        let host = interp(&plant(&sig, &mut rng, &lhs), &sig);
        for matching in find_matchings(&rule, &host, true).into_iter().take(2) {
            let Ok(direct) = boundary_complement(&rule, &host, &matching) else {
                continue;
            };
            let all = pushout_complements(&rule, &host, &matching).unwrap();
            let boundary: Vec<_> = all
                .iter()
                .filter(|c| is_boundary(c, rule.input_arity))
                .collect();
            assert_eq!(
                boundary.len(),
                1,
                "expected a unique boundary complement among {} candidates",
                all.len()
            );
            assert!(
                complement_iso(boundary[0], &direct),
                "enumerated boundary complement differs from the constructive one"
            );
            verified += 1;
        }
    }
    println!("criterion 6 (boundary complement uniqueness, {verified} instances): PASS");
}

fn complement_iso(
    a: &diagram_rewriter::dpo::Complement,
    b: &diagram_rewriter::dpo::Complement,
) -> bool {
    use diagram_rewriter::hypergraph::seeded_isomorphism;
    a.rule_leg.len() == b.rule_leg.len()
        && a.host_inputs.len() == b.host_inputs.len()
        && a.host_outputs.len() == b.host_outputs.len()
        && seeded_isomorphism(
            &a.graph,
            &b.graph,
            a.rule_leg
                .iter()
                .zip(&b.rule_leg)
                .chain(a.host_inputs.iter().zip(&b.host_inputs))
                .chain(a.host_outputs.iter().zip(&b.host_outputs))
                .map(|(&x, &y)| (x, y))
                .collect(),
        )
        .is_some()
}

/// Criterion 7: for ground rules, the DPO outcome set coincides with the
/// term-level factorization outcomes found by brute-force context search.
#[test]
fn criterion_7_ground_correspondence() {
    let mut rng = SplitMix64::new(0x07);
    let sig = Signature::new(vec![
        Generator::new("e1", 0, 1),
        Generator::new("e2", 1, 0),
        Generator::new("e3", 1, 1),
        Generator::new("w2", 0, 2),
    ])
    .unwrap();
    let mut instances = 0;
    let mut nonempty = 0;
    for round in 0..60 {
        // Ground rule: both sides 0 -> j.
        let l = random_term_from(&sig, &mut rng, 0, 1 + round % 2);
        let lt = typecheck(&l, &sig, Mode::Smc).unwrap();
        let mut r = random_term_from(&sig, &mut rng, 0, 1 + round % 3);
        for _ in 0..40 {
            if typecheck(&r, &sig, Mode::Smc).unwrap().cod == lt.cod {
                break;
            }
            let layers = 1 + rng.below(3);
            r = random_term_from(&sig, &mut rng, 0, layers);
        }
        if typecheck(&r, &sig, Mode::Smc).unwrap().cod != lt.cod {
            continue;
        }
        let rule_term = RewriteRuleTerm::new("ground", l.clone(), r.clone());
        let rule = rule_from_terms(&rule_term, &sig, Mode::Frobenius).unwrap();
        let host = interp(&random_term_from(&sig, &mut rng, 0, 2 + round % 3), &sig);
        if host.graph.edge_count() > 6 {
            continue;
        }

        let steps = applicable_steps(&host, std::slice::from_ref(&rule), Mode::Frobenius).unwrap();
        let dpo_outcomes =
            common::dedupe_by_iso(steps.iter().map(|s| s.after.clone()).collect());

        let l_cospan = interpret(&l, &sig, Mode::Smc).unwrap();
        let r_cospan = interpret(&r, &sig, Mode::Smc).unwrap();
        let contexts = common::ground_contexts(&l_cospan, &host);
        let term_outcomes = common::dedupe_by_iso(
            contexts
                .iter()
                .map(|c| r_cospan.compose(c).unwrap())
                .collect(),
        );

        assert_eq!(
            dpo_outcomes.len(),
            term_outcomes.len(),
            "outcome counts differ at round {round} (rule {l} => {r})"
        );
        for o in &dpo_outcomes {
            assert!(
                term_outcomes.iter().any(|t| t.iso_to(o)),
                "DPO outcome unreachable by factorization at round {round}"
            );
        }
        instances += 1;
        if !dpo_outcomes.is_empty() {
            nonempty += 1;
        }
    }
    assert!(instances >= 40, "too few ground instances generated");
    assert!(nonempty >= 10, "too few instances with applicable steps");
    println!(
        "criterion 7 (ground correspondence, {instances} instances, {nonempty} with steps): PASS"
    );
}

/// Criterion 8: every convex step is reproduced by the factorization route:
/// the host splits around the match image as `c1 ; (id * lhs) ; c2` and the
/// result is `c1 ; (id * rhs) ; c2`. Checked over the bimonoid system and
/// over freshly generated rule systems on random signatures.
#[test]
fn criterion_8_adequacy() {
    let sig = nb_signature();
    let system = nb_system();
    let mut rng = SplitMix64::new(0x08);
    let mut verified = 0;
    let want = 300;
    let mut walk = 0;
    while verified < want {
        walk += 1;
        assert!(walk < 40 * want, "step generation stalled");
        let t = random_term(&sig, &mut rng, 3 + walk % 10);
        let host = interp(&t, &sig);
        let steps = applicable_steps(&host, &system, Mode::Smc).unwrap();
        if steps.is_empty() {
            continue;
        }
        let step = &steps[rng.below(steps.len())];
        let rule = system
            .iter()
            .find(|r| r.name == step.rule_name)
            .expect("step names an existing rule");
        verify_factorization_route(rule, step);
        verified += 1;
    }

    // The same check over random theories: rules pair a random left side
    // with an independently generated right side of the same type.
    let mut extra = 0;
    let mut attempts = 0;
    while extra < 100 {
        attempts += 1;
        assert!(attempts < 10_000, "random-theory step generation stalled");
        let sig = random_signature(&mut rng, 2 + attempts % 3, 3);
        let lhs = random_term(&sig, &mut rng, 1 + attempts % 3);
        let lt = typecheck(&lhs, &sig, Mode::Smc).unwrap();
        let Some(rhs) = (0..30).find_map(|_| {
            let size = 1 + rng.below(4);
            let candidate = random_term(&sig, &mut rng, size);
            (typecheck(&candidate, &sig, Mode::Smc).unwrap() == lt).then_some(candidate)
        }) else {
            continue;
        };
        let Ok(rule) = rule_from_terms(
            &RewriteRuleTerm::new("r", lhs.clone(), rhs),
            &sig,
            Mode::Smc,
        ) else {
            continue;
        };
        let host = interp(&plant(&sig, &mut rng, &lhs), &sig);
        let steps = applicable_steps(&host, std::slice::from_ref(&rule), Mode::Smc).unwrap();
        for step in steps.iter().take(2) {
            verify_factorization_route(&rule, step);
            extra += 1;
        }
    }
    let total = verified + extra;
    println!("criterion 8 (adequacy via factorization, {total} steps): PASS");
}

fn verify_factorization_route(rule: &DpoRule, step: &RewriteStepRecord) {
    let host = &step.before;
    assert!(step.after.is_mda(), "convex steps preserve plain diagrams");
    let image = SubgraphSelection::image_of(&step.matching, &rule.lhs);
    let f = convex_factorize(host, &image).expect("match image is convex");
    assert!(f.before.is_mda() && f.selection.is_mda() && f.after.is_mda());

    let i_img: Vec<usize> = rule.lhs_interface[..rule.input_arity]
        .iter()
        .map(|&rn| step.matching.node_map[rn])
        .collect();
    let j_img: Vec<usize> = rule.lhs_interface[rule.input_arity..]
        .iter()
        .map(|&rn| step.matching.node_map[rn])
        .collect();
    let as_set = |xs: &[usize]| xs.iter().copied().collect::<BTreeSet<_>>();
    assert_eq!(as_set(&i_img), as_set(&f.boundary_in), "input boundary differs");
    assert_eq!(as_set(&j_img), as_set(&f.boundary_out), "output boundary differs");

    // Reorder the split interfaces to the rule's own order.
    let local = |table: &[usize], host_node: usize| -> usize {
        table.iter().position(|&h| h == host_node).unwrap()
    };
    let mut c1 = f.before.clone();
    c1.outputs = f
        .bypass
        .iter()
        .chain(i_img.iter())
        .map(|&h| local(&f.before_to_host, h))
        .collect();
    let mut c2 = f.after.clone();
    c2.inputs = f
        .bypass
        .iter()
        .chain(j_img.iter())
        .map(|&h| local(&f.after_to_host, h))
        .collect();

    let k = f.bypass.len();
    let mid_l = InterfacedGraph::identity(k).tensor(&rule.lhs_cospan());
    let mid_r = InterfacedGraph::identity(k).tensor(&rule.rhs_cospan());
    let recomposed_host = c1.compose(&mid_l).unwrap().compose(&c2).unwrap();
    assert!(
        recomposed_host.iso_to(host),
        "host does not factor through the match image"
    );
    let recomposed_result = c1.compose(&mid_r).unwrap().compose(&c2).unwrap();
    assert!(
        recomposed_result.iso_to(&step.after),
        "step result differs from the factorization route"
    );
}

/// Criterion 9: the lexicographic measure strictly decreases on every
/// bimonoid step, each rule decreasing its specific component, and
/// normalization always reaches a normal form.
#[test]
fn criterion_9_termination_metric() {
    let sig = nb_signature();
    let system = nb_system();
    let mut rng = SplitMix64::new(0x09);
    let mut steps_checked = 0u32;
    let want = 1000;
    let mut hosts = 0;
    while steps_checked < want {
        hosts += 1;
        assert!(hosts < 4000, "host generation stalled");
        let t = random_term(&sig, &mut rng, 3 + (hosts as usize) % 18);
        let host = interp(&t, &sig);
        if host.graph.edge_count() > 20 {
            continue;
        }
        let (_, trace, outcome) = normalize(
            &host,
            &system,
            Mode::Smc,
            10_000,
            Strategy::Seeded(rng.next_u64()),
        )
        .unwrap();
        assert_eq!(
            outcome,
            NormalizeOutcome::NormalForm,
            "normalization ran out of fuel"
        );
        for record in &trace {
            check_metric_step(record);
            steps_checked += 1;
        }
    }
    println!(
        "criterion 9 (termination metric, {steps_checked} steps over {hosts} hosts): PASS"
    );
}

fn check_metric_step(record: &RewriteStepRecord) {
    let before = metric(&record.before).unwrap();
    let after = metric(&record.after).unwrap();
    assert!(
        after < before,
        "metric did not decrease on {}: {} -> {}",
        record.rule_name,
        before,
        after
    );
    match record.rule_name.as_str() {
        "ba1" | "ba2" => {
            assert_eq!(before.u_paths, after.u_paths, "{}", record.rule_name);
            assert_eq!(before.m_paths, after.m_paths, "{}", record.rule_name);
            assert_eq!(before.mu_count, after.mu_count, "{}", record.rule_name);
            assert_eq!(before.nu_count, after.nu_count, "{}", record.rule_name);
            assert!(after.l_weight_sum < before.l_weight_sum, "{}", record.rule_name);
        }
        "ba3" | "ba4" | "ba5" | "ba6" | "ba10" => {
            assert!(after.u_paths < before.u_paths, "{}", record.rule_name);
        }
        "ba7" => {
            assert_eq!(before.u_paths, after.u_paths, "ba7 u");
            assert_eq!(before.m_paths, after.m_paths, "ba7 m");
            assert_eq!(before.mu_count, after.mu_count, "ba7 mu");
            assert!(after.nu_count < before.nu_count, "ba7 nu");
        }
        "ba8" => {
            assert_eq!(before.u_paths, after.u_paths, "ba8 u");
            assert_eq!(before.m_paths, after.m_paths, "ba8 m");
            assert!(after.mu_count < before.mu_count, "ba8 mu");
        }
        "ba9" => {
            assert_eq!(before.u_paths, after.u_paths, "ba9 u");
            assert!(after.m_paths < before.m_paths, "ba9 m");
        }
        other => panic!("unexpected rule {other}"),
    }
}

/// Criterion 10: the dynamic-programming path counts agree with exhaustive
/// enumeration on random acyclic hypergraphs.
#[test]
fn criterion_10_path_count_oracle() {
    let sig = nb_signature();
    let mut rng = SplitMix64::new(0x0a);
    let rounds = 200;
    for round in 0..rounds {
        let host = random_dag(&sig, &mut rng, 6, 10);
        let g = &host.graph;
        let mark_nodes = |nodes: &[usize]| {
            let mut m = vec![false; g.node_count()];
            for &v in nodes {
                m[v] = true;
            }
            m
        };
        let mark_label = |label: &str| -> Vec<bool> {
            g.edges().iter().map(|e| e.label == label).collect()
        };
        let no_nodes = vec![false; g.node_count()];

        let u_expected = common::count_walks_by_enumeration(
            g,
            &mark_nodes(&host.inputs),
            &mark_label("eta"),
            &mark_nodes(&host.outputs),
            &mark_label("eps"),
        );
        assert_eq!(
            count_u_paths(&host).unwrap(),
            u_expected,
            "U-path count mismatch at round {round}"
        );

        let m_expected = common::count_walks_by_enumeration(
            g,
            &no_nodes,
            &mark_label("mu"),
            &no_nodes,
            &mark_label("nu"),
        );
        assert_eq!(
            count_m_paths(&host).unwrap(),
            m_expected,
            "M-path count mismatch at round {round}"
        );
    }
    println!("criterion 10 (path-count oracle, {rounds} random dags): PASS");
}

/// The bimonoid regression from the rewriting examples: the left unit law
/// normalizes to the identity wire in one step, and a multiplication
/// followed by a comultiplication steps to the crossed shape.
#[test]
fn nb_rewriting_examples() {
    let sig = nb_signature();
    let system = nb_system();
    let unit_host = interp(
        &Term::seq(Term::par(Term::gen("eta"), Term::Id(1)), Term::gen("mu")),
        &sig,
    );
    let (result, trace, _) =
        normalize(&unit_host, &system, Mode::Smc, 10, Strategy::Deterministic).unwrap();
    assert_eq!(trace.len(), 1);
    assert!(result.iso_to(&InterfacedGraph::identity(1)));

    let mu_nu = interp(&Term::seq(Term::gen("mu"), Term::gen("nu")), &sig);
    let (result, trace, _) =
        normalize(&mu_nu, &system, Mode::Smc, 10, Strategy::Deterministic).unwrap();
    assert_eq!(trace.len(), 1);
    assert_eq!(trace[0].rule_name, "ba9");
    let expected = interp(&nb_rules()[8].rhs, &sig);
    assert!(result.iso_to(&expected));

    // Composing the unit-and-counit cospans and erasing them.
    let bone = interp(&Term::seq(Term::gen("eta"), Term::gen("eps")), &sig);
    let steps = applicable_steps(&bone, &system, Mode::Smc).unwrap();
    assert!(steps.iter().any(|s| s.rule_name == "ba10"
        && s.after.graph.node_count() == 0
        && s.after.graph.edge_count() == 0));
    println!("bimonoid rewriting examples: PASS");
}

/// The Frobenius generator cospans satisfy monogamy exactly as expected,
/// and frob_gen composites realize the mixed equations.
#[test]
fn frobenius_generator_cospans() {
    let mul = InterfacedGraph::frob_gen(FrobGen::Mul);
    assert!(!mul.is_monogamous());
    let comul_then_mul = InterfacedGraph::frob_gen(FrobGen::Comul)
        .compose(&InterfacedGraph::frob_gen(FrobGen::Mul))
        .unwrap();
    assert!(comul_then_mul.iso_to(&InterfacedGraph::identity(1)));
    println!("frobenius generator cospans: PASS");
}

/// Bending a rule to a ground rule preserves the rewrite relation: a term
/// step d => e is mirrored by a ground step on the bent interpretations.
#[test]
fn bending_round_trip() {
    use diagram_rewriter::term::bend;
    let sig = nb_signature();
    // d = (eta * id 1) ; mu rewrites to e = id 1 by the left unit law.
    let unit_rule = &nb_rules()[2];
    let d = Term::seq(Term::par(Term::gen("eta"), Term::Id(1)), Term::gen("mu"));
    let e = Term::Id(1);

    // The bent rule and the bent host live in frobenius mode.
    let ground_rule = rule_from_terms(
        &RewriteRuleTerm::new(
            "bent-unit",
            bend(&unit_rule.lhs, &sig).unwrap(),
            bend(&unit_rule.rhs, &sig).unwrap(),
        ),
        &sig,
        Mode::Frobenius,
    )
    .unwrap();
    let bent_d = interpret(&bend(&d, &sig).unwrap(), &sig, Mode::Frobenius).unwrap();
    let bent_e = interpret(&bend(&e, &sig).unwrap(), &sig, Mode::Frobenius).unwrap();

    let steps = applicable_steps(&bent_d, &[ground_rule], Mode::Frobenius).unwrap();
    assert!(
        steps.iter().any(|s| s.after.iso_to(&bent_e)),
        "the bent rewrite does not reach the bent result"
    );
    println!("bending round trip: PASS");
}

/// A single multiplication edge matches the associativity shape twice,
/// convexly both times; the unit-law redex has an identity-wire context.
#[test]
fn matching_and_context_shapes() {
    let sig = nb_signature();
    let system = nb_system();
    let mu_rule = rule_from_terms(
        &RewriteRuleTerm::new("probe", Term::gen("mu"), Term::gen("mu")),
        &sig,
        Mode::Smc,
    )
    .unwrap();
    let assoc_host = interp(
        &Term::seq(Term::par(Term::gen("mu"), Term::Id(1)), Term::gen("mu")),
        &sig,
    );
    assert_eq!(find_matchings(&mu_rule, &assoc_host, true).len(), 2);

    // ba10's right side is the empty graph with an empty interface.
    let ba10 = &system[9];
    assert_eq!(ba10.rhs.node_count(), 0);
    assert_eq!(ba10.rhs.edge_count(), 0);
    assert_eq!(ba10.interface_len(), 0);

    // The unit-law redex inside (eta * id) ; mu leaves an identity wire.
    let ba3 = &system[2];
    let unit_host = interp(
        &Term::seq(Term::par(Term::gen("eta"), Term::Id(1)), Term::gen("mu")),
        &sig,
    );
    let matching = find_matchings(ba3, &unit_host, true).remove(0);
    let complement = boundary_complement(ba3, &unit_host, &matching).unwrap();
    assert_eq!(complement.graph.edge_count(), 0);
    let as_cospan = complement.boundary_cospan(ba3.input_arity);
    assert!(as_cospan.is_monogamous());
    println!("matching and context shapes: PASS");
}
