// Produce the machine-readable JSON document for a run and read values
// back out of it.
//
// Run with `cargo run --example machine_report`.

use ess::{run, Catalog, RunConfig, ScenarioContext, ScoreRecord, TierPlan};
use serde_json::Value;

fn main() -> ess::Result<()> {
    run_example()
}

pub fn run_example() -> ess::Result<()> {
    let config = RunConfig::new(Catalog::builtin(), ScenarioContext::substitution());
    let run = run(&config)?;

    // One JSON document carries the catalog, scenario, scores, selection,
    // plan, provenance trail, and engine version.
    let json = run.machine_json();
    let value: Value = serde_json::from_str(&json).expect("document parses");
    let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
    println!("top-level keys: {}", keys.join(", "));

    // Numeric payloads round-trip losslessly; rendered strings ride along.
    let scores: Vec<ScoreRecord> =
        serde_json::from_value(value["scores"].clone()).expect("scores parse");
    println!(
        "shap adjusted C: full={}, rendered={}",
        scores[0].adjusted.c, value["scores"][0]["rendered"]["c"]
    );
    let plan: TierPlan = serde_json::from_value(value["plan"].clone()).expect("plan parses");
    let (t1, t2, t3) = plan.assignments();
    println!(
        "plan: tier1={} tier2={} tier3={}",
        t1.unwrap_or("-"),
        t2.unwrap_or("-"),
        t3.unwrap_or("-")
    );

    // Every stage logs a digest of its inputs, so a reviewer can check that
    // nothing was recomputed between stages.
    println!("\nprovenance:");
    for record in &run.provenance().records {
        println!("  {:<16} {}", record.stage, &record.input_digest[..23]);
    }

    // Identical runs serialize byte-identically (timestamps are opt-in).
    let again = ess::run(&config)?.machine_json();
    println!("\nbyte-identical rerun: {}", json == again);
    Ok(())
}
