//! Normalizing a diagram under the non-commutative bimonoid rules, with
//! the five-component termination measure printed at every step.
//!
//! ```sh
//! cargo run --example normalize_bimonoid
//! ```

use diagram_rewriter::dpo::{normalize, NormalizeOutcome, Strategy};
use diagram_rewriter::nb::{check_trace_decreasing, metric, nb_signature, nb_system};
use diagram_rewriter::parser::parse_term;
use diagram_rewriter::readback::readback_mda;
use diagram_rewriter::term::{interpret, Mode};

fn main() {
    let sig = nb_signature();
    let system = nb_system();

    // A multiplication into a comultiplication with units mixed in.
    let text = "(eta * id 1 * eta) ; (mu * id 1) ; mu ; nu";
    let host = interpret(&parse_term(text).unwrap(), &sig, Mode::Smc).unwrap();
    println!("start: {text}");
    println!("initial metric (U, M, mu, nu, L): {}\n", metric(&host).unwrap());

    let (result, trace, outcome) =
        normalize(&host, &system, Mode::Smc, 10_000, Strategy::Deterministic).unwrap();
    let report = check_trace_decreasing(&trace).unwrap();
    for (k, step) in report.steps.iter().enumerate() {
        println!(
            "step {k}: {:>5}  {} -> {}  [{}]",
            step.rule_name,
            step.before,
            step.after,
            if step.decreased { "decreasing" } else { "VIOLATION" }
        );
    }
    assert!(report.all_decreasing());

    println!(
        "\n{} after {} steps",
        match outcome {
            NormalizeOutcome::NormalForm => "normal form",
            NormalizeOutcome::FuelExhausted => "fuel exhausted",
        },
        trace.len()
    );
    println!("normal form reads back as: {}", readback_mda(&result).unwrap());
}
