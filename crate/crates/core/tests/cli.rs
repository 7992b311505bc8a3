//! End-to-end tests of the command-line interface, run against the built
//! binary so exit codes and byte-level output are what users see.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_diagram-rewriter"))
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn tmp_file(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("diagram-rewriter-test-{name}"));
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn check_reports_theory_summary() {
    let out = run(&["check", &fixture("nb.thy")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("4 generators, 10 rules"));
}

#[test]
fn check_rejects_ill_typed_theory() {
    let bad = tmp_file("bad.thy", "theory t\ngen f : 1 -> 2\nrule r : f => id 1\n");
    let out = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_command_is_usage_error() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn interp_readback_interp_round_trip() {
    let nb = fixture("nb.thy");
    let g1 = run(&["interp", &nb, "(mu * id 1) ; mu"]);
    assert_eq!(g1.status.code(), Some(0));
    let g1_path = tmp_file("roundtrip1.json", &stdout(&g1));

    let term = run(&["readback", &nb, g1_path.to_str().unwrap()]);
    assert_eq!(term.status.code(), Some(0));

    let g2 = run(&["interp", &nb, stdout(&term).trim()]);
    assert_eq!(g2.status.code(), Some(0));
    let g2_path = tmp_file("roundtrip2.json", &stdout(&g2));

    let iso = run(&[
        "iso",
        g1_path.to_str().unwrap(),
        g2_path.to_str().unwrap(),
    ]);
    assert_eq!(iso.status.code(), Some(0));
    // Canonical forms are identical, not merely isomorphic.
    assert_eq!(stdout(&g1), stdout(&g2));
}

#[test]
fn readback_of_non_mda_graph_exits_two() {
    let graph = tmp_file(
        "loop.json",
        r#"{"nodes": 1, "edges": [{"label": "e3", "sources": [0], "targets": [0]}]}"#,
    );
    let out = run(&["readback", &fixture("insert.thy"), graph.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // The Frobenius readback always succeeds.
    let out = run(&[
        "readback",
        &fixture("insert.thy"),
        graph.to_str().unwrap(),
        "--frobenius",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn iso_exit_codes() {
    let bone = fixture("bone.json");
    let pair = fixture("closed_pair.json");
    assert_eq!(run(&["iso", &bone, &bone]).status.code(), Some(0));
    assert_eq!(run(&["iso", &bone, &pair]).status.code(), Some(2));
}

#[test]
fn normalize_bone_erases_in_one_step() {
    let trace = std::env::temp_dir().join("diagram-rewriter-test-trace.txt");
    let out = run(&[
        "normalize",
        &fixture("nb.thy"),
        &fixture("bone.json"),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["nodes"], 0);
    let trace_text = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(trace_text.lines().count(), 1);
    assert!(trace_text.contains("rule=ba10"));
    assert!(trace_text.contains("metric=(0, 0, 0, 0, 0)"));
}

#[test]
fn normalize_writes_machine_readable_trace() {
    let nb = fixture("nb.thy");
    let host = run(&["interp", &nb, "(eta * id 1) ; mu"]);
    let host_path = tmp_file("unit_redex.json", &stdout(&host));
    let json_path = std::env::temp_dir().join("diagram-rewriter-test-trace.json");
    let out = run(&[
        "normalize",
        &nb,
        host_path.to_str().unwrap(),
        "--trace-json",
        json_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let steps = doc["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 1);
    assert_eq!(steps[0]["rule"], "ba3");
    assert!(steps[0]["metric"].is_array());
}

#[test]
fn interp_accepts_a_term_file() {
    let term_file = tmp_file("term.txt", "(mu * id 1) ; mu\n");
    let out = run(&["interp", &fixture("nb.thy"), term_file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn rewrite_can_be_restricted_to_one_rule() {
    let nb = fixture("nb.thy");
    // Only ba9 applies to mu ; nu; restricting to ba10 finds nothing.
    let host = run(&["interp", &nb, "mu ; nu"]);
    let host_path = tmp_file("mu_nu.json", &stdout(&host));
    let out = run(&[
        "rewrite",
        &nb,
        host_path.to_str().unwrap(),
        "--rule",
        "ba9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "rewrite",
        &nb,
        host_path.to_str().unwrap(),
        "--rule",
        "ba10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "rewrite",
        &nb,
        host_path.to_str().unwrap(),
        "--rule",
        "nonexistent",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn normalize_fuel_exhaustion_exits_three() {
    // A growing rule never terminates; one unit of fuel must be reported as
    // exhaustion.
    let theory = tmp_file(
        "growing.thy",
        "theory g\ngen f : 1 -> 1\nrule grow : f => f ; f\n",
    );
    let host = tmp_file(
        "segment.json",
        r#"{"nodes": 2, "edges": [{"label": "f", "sources": [0], "targets": [1]}],
           "inputs": [0], "outputs": [1]}"#,
    );
    let out = run(&[
        "normalize",
        theory.to_str().unwrap(),
        host.to_str().unwrap(),
        "--fuel",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn rewrite_all_lists_both_unrestricted_outcomes() {
    let out = run(&[
        "rewrite",
        &fixture("insert.thy"),
        &fixture("closed_pair.json"),
        "--all",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["outcomes"].as_array().unwrap().len(), 2);

    // In smc mode the same rule gives exactly one outcome.
    let out = run(&[
        "rewrite",
        &fixture("insert.thy"),
        &fixture("closed_pair.json"),
        "--mode",
        "smc",
        "--all",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["outcomes"].as_array().unwrap().len(), 1);
}

#[test]
fn rewrite_with_no_match_exits_two() {
    let out = run(&[
        "rewrite",
        &fixture("nonconvex.thy"),
        &fixture("nonconvex_host.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn match_counts_mono_and_convex() {
    let out = run(&[
        "match",
        &fixture("nonconvex.thy"),
        "swap",
        &fixture("nonconvex_host.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("1 matching(s)"));
    let out = run(&[
        "match",
        &fixture("nonconvex.thy"),
        "swap",
        &fixture("nonconvex_host.json"),
        "--convex",
    ]);
    assert!(stdout(&out).starts_with("0 matching(s)"));
}

#[test]
fn metric_prints_tuple() {
    let out = run(&["metric", &fixture("bone.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "(1, 0, 0, 0, 0)");
    // Non-bimonoid labels are a usage error.
    let out = run(&["metric", &fixture("closed_pair.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn prove_exit_codes() {
    let nb = fixture("nb.thy");
    let proved = run(&["prove", &nb, "(eta * id 1) ; mu", "id 1"]);
    assert_eq!(proved.status.code(), Some(0));
    assert!(stdout(&proved).contains("ba3"));
    let inconclusive = run(&["prove", &nb, "mu", "sym 1 1 ; mu", "--fuel", "0"]);
    assert_eq!(inconclusive.status.code(), Some(3));
}

#[test]
fn normalize_output_is_deterministic() {
    let nb = fixture("nb.thy");
    let host = run(&["interp", &nb, "(mu * id 1) ; mu ; nu"]);
    let host_path = tmp_file("det_host.json", &stdout(&host));
    let a = run(&["normalize", &nb, host_path.to_str().unwrap()]);
    let b = run(&["normalize", &nb, host_path.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn dot_output_is_deterministic() {
    let a = run(&["dot", &fixture("nonconvex_host.json")]);
    let b = run(&["dot", &fixture("nonconvex_host.json")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("digraph"));
}

#[test]
fn gen_random_is_seeded_and_env_overridable() {
    let nb = fixture("nb.thy");
    let a = run(&["gen-random", "--seed", "11", "--edges", "5", &nb]);
    let b = run(&["gen-random", "--seed", "11", "--edges", "5", &nb]);
    assert_eq!(stdout(&a), stdout(&b));
    let c = run(&["gen-random", "--seed", "12", "--edges", "5", &nb]);
    assert_ne!(stdout(&a), stdout(&c));
    let d = bin()
        .args(["gen-random", "--seed", "11", "--edges", "5", &nb])
        .env("DIAGRAM_REWRITER_SEED", "12")
        .output()
        .unwrap();
    assert_eq!(stdout(&c), stdout(&d));
    // The generated diagram is a valid monogamous acyclic graph.
    let parsed = diagram_rewriter::json::from_json(&stdout(&a)).unwrap();
    assert!(parsed.is_mda());
}

#[test]
fn parse_errors_carry_position_and_exit_one() {
    let bad = tmp_file("syntax.thy", "theory t\ngen f : 1 ->\n");
    let out = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("2:"), "stderr should carry a position: {err}");
}
