//! Command-line front end. Exit codes: 0 success, 1 usage/parse/type error,
//! 2 negative decision (not isomorphic, not a term, no step), 3 fuel
//! exhausted or search inconclusive.

use std::fmt::Write as _;
use std::io::Write;

use crate::cospan::InterfacedGraph;
use crate::dpo::{
    applicable_steps, normalize, rule_from_terms, NormalizeOutcome, RewriteStepRecord, Strategy,
};
use crate::generate::random_mda;
use crate::json::{from_json, to_json};
use crate::nb::{check_trace_decreasing, is_nb_graph, metric};
use crate::parser::parse_term;
use crate::prove::{prove_equal, ProveOutcome};
use crate::readback::{canonicalize, readback_frobenius, readback_mda, ReadbackError};
use crate::rng::SplitMix64;
use crate::term::{interpret, Mode, Term};
use crate::theory::{parse_theory, Theory};

pub const SEED_ENV: &str = "DIAGRAM_REWRITER_SEED";

const USAGE: &str = "\
diagram-rewriter <command> [args]

commands:
  check <theory>                          typecheck a theory file
  interp <theory> <term-or-file>          interpret a term as a graph (JSON)
  readback <theory> <graph.json> [--frobenius]
                                          extract a term from a graph
  match <theory> <rule> <graph.json> [--convex]
                                          list matchings of a rule's left side
  rewrite <theory> <graph.json> [--rule R] [--mode smc|frobenius] [--all]
                                          apply one rewrite step
  normalize <theory> <graph.json> [--fuel N] [--trace FILE] [--trace-json FILE]
                                          rewrite to normal form (fuel default 1000)
  metric <graph.json>                     bimonoid termination metric tuple
  prove <theory> <t1> <t2> [--fuel N]     bounded equality search
  iso <g1.json> <g2.json>                 graph isomorphism test
  dot <graph.json>                        Graphviz export
  gen-random --seed S --edges N <theory>  random diagram for test harnesses
                                          (env DIAGRAM_REWRITER_SEED overrides --seed)
";

struct Invocation {
    positional: Vec<String>,
    flags: Vec<(String, Option<String>)>,
}

const VALUE_FLAGS: &[&str] = &["rule", "mode", "fuel", "trace", "trace-json", "seed", "edges"];

fn split_args(args: &[String]) -> Result<Invocation, String> {
    let mut positional = Vec::new();
    let mut flags = Vec::new();
    let mut k = 0;
    while k < args.len() {
        let a = &args[k];
        if let Some(name) = a.strip_prefix("--") {
            if VALUE_FLAGS.contains(&name) {
                let value = args
                    .get(k + 1)
                    .cloned()
                    .ok_or_else(|| format!("flag --{name} needs a value"))?;
                flags.push((name.to_string(), Some(value)));
                k += 2;
            } else {
                flags.push((name.to_string(), None));
                k += 1;
            }
        } else {
            positional.push(a.clone());
            k += 1;
        }
    }
    Ok(Invocation { positional, flags })
}

impl Invocation {
    fn flag(&self, name: &str) -> bool {
        self.flags.iter().any(|(n, _)| n == name)
    }

    fn flag_value(&self, name: &str) -> Option<&str> {
        self.flags
            .iter()
            .find(|(n, _)| n == name)
            .and_then(|(_, v)| v.as_deref())
    }

    fn require(&self, index: usize, what: &str) -> Result<&str, String> {
        self.positional
            .get(index)
            .map(String::as_str)
            .ok_or_else(|| format!("missing argument: {what}"))
    }
}

/// Run one command. User-facing output goes to `out`; diagnostics go to
/// stderr. Returns the process exit code.
pub fn run<W: Write>(args: &[String], out: &mut W) -> i32 {
    match dispatch(args, out) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

fn dispatch<W: Write>(args: &[String], out: &mut W) -> Result<i32, String> {
    let Some(command) = args.first().map(String::as_str) else {
        eprint!("{USAGE}");
        return Ok(1);
    };
    if command == "help" || command == "--help" {
        write_out(out, USAGE)?;
        return Ok(0);
    }
    let inv = split_args(&args[1..])?;
    match command {
        "check" => cmd_check(&inv, out),
        "interp" => cmd_interp(&inv, out),
        "readback" => cmd_readback(&inv, out),
        "match" => cmd_match(&inv, out),
        "rewrite" => cmd_rewrite(&inv, out),
        "normalize" => cmd_normalize(&inv, out),
        "metric" => cmd_metric(&inv, out),
        "prove" => cmd_prove(&inv, out),
        "iso" => cmd_iso(&inv, out),
        "dot" => cmd_dot(&inv, out),
        "gen-random" => cmd_gen_random(&inv, out),
        other => {
            eprintln!("error: unknown command `{other}`");
            eprint!("{USAGE}");
            Ok(1)
        }
    }
}

fn write_out<W: Write>(out: &mut W, text: &str) -> Result<(), String> {
    out.write_all(text.as_bytes())
        .map_err(|e| format!("cannot write output: {e}"))
}

fn read_file(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))
}

fn load_theory(path: &str) -> Result<Theory, String> {
    parse_theory(&read_file(path)?).map_err(|e| format!("{path}: {e}"))
}

fn load_graph(path: &str) -> Result<InterfacedGraph, String> {
    from_json(&read_file(path)?).map_err(|e| format!("{path}: {e}"))
}

fn load_typed_graph(path: &str, theory: &Theory) -> Result<InterfacedGraph, String> {
    let g = load_graph(path)?;
    g.graph
        .validate_against(&theory.signature)
        .map_err(|e| format!("{path}: {e}"))?;
    Ok(g)
}

/// A term argument is either inline text or a path to a file holding one.
fn load_term(arg: &str) -> Result<Term, String> {
    let text = if std::path::Path::new(arg).is_file() {
        read_file(arg)?
    } else {
        arg.to_string()
    };
    parse_term(&text).map_err(|e| e.to_string())
}

fn parse_mode(inv: &Invocation, default: Mode) -> Result<Mode, String> {
    match inv.flag_value("mode") {
        None => Ok(default),
        Some("smc") => Ok(Mode::Smc),
        Some("frobenius") => Ok(Mode::Frobenius),
        Some(other) => Err(format!("unknown mode `{other}`")),
    }
}

fn parse_fuel(inv: &Invocation, default: usize) -> Result<usize, String> {
    match inv.flag_value("fuel") {
        None => Ok(default),
        Some(text) => text
            .parse()
            .map_err(|_| format!("invalid fuel `{text}`")),
    }
}

fn cmd_check<W: Write>(inv: &Invocation, out: &mut W) -> Result<i32, String> {
    let theory = load_theory(inv.require(0, "theory file")?)?;
    theory.dpo_system().map_err(|e| e.to_string())?;
    write_out(
        out,
        &format!(
            "theory {}: {} generators, {} rules, mode {}\n",
            theory.name,
            theory.signature.generators().len(),
            theory.rules.len(),
            mode_name(theory.mode),
        ),
    )?;
    Ok(0)
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Smc => "smc",
        Mode::Frobenius => "frobenius",
    }
}

fn cmd_interp<W: Write>(inv: &Invocation, out: &mut W) -> Result<i32, String> {
    let theory = load_theory(inv.require(0, "theory file")?)?;
    let term = load_term(inv.require(1, "term or term file")?)?;
    let graph = interpret(&term, &theory.signature, theory.mode).map_err(|e| e.to_string())?;
    write_out(out, &to_json(&canonicalize(&graph)))?;
    Ok(0)
}

fn cmd_readback<W: Write>(inv: &Invocation, out: &mut W) -> Result<i32, String> {
    let theory = load_theory(inv.require(0, "theory file")?)?;
    let graph = load_typed_graph(inv.require(1, "graph file")?, &theory)?;
    if inv.flag("frobenius") {
        write_out(out, &format!("{}\n", readback_frobenius(&graph)))?;
        return Ok(0);
    }
    match readback_mda(&graph) {
        Ok(term) => {
            write_out(out, &format!("{term}\n"))?;
            Ok(0)
        }
        Err(ReadbackError::NotMda) => {
            eprintln!("not monogamous directed acyclic: no plain term denotes this graph");
            Ok(2)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_match<W: Write>(inv: &Invocation, out: &mut W) -> Result<i32, String> {
    let theory = load_theory(inv.require(0, "theory file")?)?;
    let rule_name = inv.require(1, "rule name")?;
    let graph = load_typed_graph(inv.require(2, "graph file")?, &theory)?;
    let rule_term = theory
        .rule(rule_name)
        .ok_or_else(|| format!("no rule `{rule_name}` in theory {}", theory.name))?;
    let rule =
        rule_from_terms(rule_term, &theory.signature, theory.mode).map_err(|e| e.to_string())?;
    let matches = crate::dpo::find_matchings(&rule, &graph, inv.flag("convex"));
    let mut text = format!("{} matching(s)\n", matches.len());
    for (k, m) in matches.iter().enumerate() {
        let _ = writeln!(
            text,
            "match {k}: nodes={:?} edges={:?}",
            m.node_map, m.edge_map
        );
    }
    write_out(out, &text)?;
    Ok(0)
}

fn cmd_rewrite<W: Write>(inv: &Invocation, out: &mut W) -> Result<i32, String> {
    let theory = load_theory(inv.require(0, "theory file")?)?;
    let graph = load_typed_graph(inv.require(1, "graph file")?, &theory)?;
    let mode = parse_mode(inv, theory.mode)?;
    let mut system = theory.dpo_system().map_err(|e| e.to_string())?;
    if mode == Mode::Frobenius && theory.mode == Mode::Smc {
        // Reinterpret the rules without the convex-validity requirement.
        system = theory
            .rules
            .iter()
            .map(|r| rule_from_terms(r, &theory.signature, Mode::Frobenius))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
    }
    if let Some(name) = inv.flag_value("rule") {
        system.retain(|r| r.name == name);
        if system.is_empty() {
            return Err(format!("no rule `{name}` in theory {}", theory.name));
        }
    }
    let steps = applicable_steps(&graph, &system, mode).map_err(|e| e.to_string())?;
    if steps.is_empty() {
        eprintln!("no rewrite step applies");
        return Ok(2);
    }
    if inv.flag("all") {
        let docs: Vec<serde_json::Value> = steps
            .iter()
            .map(|s| {
                serde_json::json!({
                    "rule": s.rule_name,
                    "match": s.matching.edge_map,
                    "graph": crate::json::GraphDoc::from(&canonicalize(&s.after)),
                })
            })
            .collect();
        let body = serde_json::to_string_pretty(&serde_json::json!({ "outcomes": docs }))
            .expect("plain data serializes");
        write_out(out, &format!("{body}\n"))?;
    } else {
        write_out(out, &to_json(&canonicalize(&steps[0].after)))?;
    }
    Ok(0)
}

fn trace_lines(trace: &[RewriteStepRecord]) -> String {
    let nb = trace
        .iter()
        .all(|r| is_nb_graph(&r.before.graph) && is_nb_graph(&r.after.graph));
    let reports = if nb {
        check_trace_decreasing(trace).ok()
    } else {
        None
    };
    let mut text = String::new();
    for (k, record) in trace.iter().enumerate() {
        let metric_text = reports
            .as_ref()
            .map(|rep| rep.steps[k].after.to_string())
            .unwrap_or_else(|| "-".to_string());
        let _ = writeln!(
            text,
            "step {k}: rule={} match={:?} metric={metric_text}",
            record.rule_name, record.matching.edge_map
        );
    }
    text
}

fn trace_json(trace: &[RewriteStepRecord]) -> String {
    let steps: Vec<serde_json::Value> = trace
        .iter()
        .map(|record| {
            let m = metric(&record.after).ok();
            serde_json::json!({
                "rule": record.rule_name,
                "match_edges": record.matching.edge_map,
                "match_nodes": record.matching.node_map,
                "after": crate::json::GraphDoc::from(&record.after),
                "metric": m.map(|m| vec![
                    m.u_paths as u64, m.m_paths as u64, m.mu_count, m.nu_count, m.l_weight_sum,
                ]),
            })
        })
        .collect();
    let mut body = serde_json::to_string_pretty(&serde_json::json!({ "steps": steps }))
        .expect("plain data serializes");
    body.push('\n');
    body
}

fn cmd_normalize<W: Write>(inv: &Invocation, out: &mut W) -> Result<i32, String> {
    let theory = load_theory(inv.require(0, "theory file")?)?;
    let graph = load_typed_graph(inv.require(1, "graph file")?, &theory)?;
    let fuel = parse_fuel(inv, 1000)?;
    let system = theory.dpo_system().map_err(|e| e.to_string())?;
    let (result, trace, outcome) = normalize(
        &graph,
        &system,
        theory.mode,
        fuel,
        Strategy::Deterministic,
    )
    .map_err(|e| e.to_string())?;
    if let Some(path) = inv.flag_value("trace") {
        std::fs::write(path, trace_lines(&trace))
            .map_err(|e| format!("cannot write `{path}`: {e}"))?;
    }
    if let Some(path) = inv.flag_value("trace-json") {
        std::fs::write(path, trace_json(&trace))
            .map_err(|e| format!("cannot write `{path}`: {e}"))?;
    }
    write_out(out, &to_json(&canonicalize(&result)))?;
    match outcome {
        NormalizeOutcome::NormalForm => Ok(0),
        NormalizeOutcome::FuelExhausted => {
            eprintln!("fuel exhausted after {} steps", trace.len());
            Ok(3)
        }
    }
}

fn cmd_metric<W: Write>(inv: &Invocation, out: &mut W) -> Result<i32, String> {
    let graph = load_graph(inv.require(0, "graph file")?)?;
    if !is_nb_graph(&graph.graph) {
        return Err("metric requires a graph over the bimonoid signature (mu, eta, nu, eps)".into());
    }
    let m = metric(&graph).map_err(|e| e.to_string())?;
    write_out(out, &format!("{m}\n"))?;
    Ok(0)
}

fn cmd_prove<W: Write>(inv: &Invocation, out: &mut W) -> Result<i32, String> {
    let theory = load_theory(inv.require(0, "theory file")?)?;
    let t1 = load_term(inv.require(1, "first term")?)?;
    let t2 = load_term(inv.require(2, "second term")?)?;
    let fuel = parse_fuel(inv, 8)?;
    let outcome = prove_equal(&t1, &t2, &theory.rules, &theory.signature, theory.mode, fuel)
        .map_err(|e| e.to_string())?;
    match outcome {
        ProveOutcome::Proved(steps) => {
            let mut text = format!("proved in {} step(s)\n", steps.len());
            for (k, step) in steps.iter().enumerate() {
                let _ = writeln!(text, "step {k}: {step}");
            }
            write_out(out, &text)?;
            Ok(0)
        }
        ProveOutcome::Inconclusive => {
            eprintln!("inconclusive within fuel {fuel}");
            Ok(3)
        }
    }
}

fn cmd_iso<W: Write>(inv: &Invocation, out: &mut W) -> Result<i32, String> {
    let a = load_graph(inv.require(0, "first graph file")?)?;
    let b = load_graph(inv.require(1, "second graph file")?)?;
    if a.iso_to(&b) {
        write_out(out, "isomorphic\n")?;
        Ok(0)
    } else {
        write_out(out, "not isomorphic\n")?;
        Ok(2)
    }
}

fn cmd_dot<W: Write>(inv: &Invocation, out: &mut W) -> Result<i32, String> {
    let graph = load_graph(inv.require(0, "graph file")?)?;
    write_out(out, &crate::dot::to_dot(&graph))?;
    Ok(0)
}

fn cmd_gen_random<W: Write>(inv: &Invocation, out: &mut W) -> Result<i32, String> {
    let theory = load_theory(inv.require(0, "theory file")?)?;
    let seed = match std::env::var(SEED_ENV) {
        Ok(text) => text
            .parse()
            .map_err(|_| format!("invalid {SEED_ENV} value `{text}`"))?,
        Err(_) => inv
            .flag_value("seed")
            .unwrap_or("0")
            .parse()
            .map_err(|_| "invalid --seed value".to_string())?,
    };
    let edges: usize = inv
        .flag_value("edges")
        .unwrap_or("6")
        .parse()
        .map_err(|_| "invalid --edges value".to_string())?;
    let mut rng = SplitMix64::new(seed);
    let (_, graph) = random_mda(&theory.signature, &mut rng, edges.max(1));
    write_out(out, &to_json(&canonicalize(&graph)))?;
    Ok(0)
}
