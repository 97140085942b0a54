// Define a deployment scenario in TOML, including axis-weight overrides,
// and see how it moves the scores.
//
// Run with `cargo run --example custom_scenario`.

use ess::{render_scores, run, scenario_from_toml, Catalog, OutputFormat, RunConfig};

const SCENARIO: &str = r#"
name = "regulator-audit"
gamma_c = 1.30
gamma_u = 1.00
gamma_d = 0.90
latency_budget_ms = 500
reserved_overhead_ms = 150
fit_fraction = 0.9

[selection_weights]
compliance = 0.6
user = 0.2
developer = 0.2

[axis_weights]

[axis_weights.compliance]
auditability = 0.8
traceability = 0.2

[axis_weights.user]
comprehensibility = 0.5
actionability = 0.5

[axis_weights.developer]
fidelity = 0.6
debuggability = 0.3
efficiency = 0.1
"#;

fn main() -> ess::Result<()> {
    run_example()
}

pub fn run_example() -> ess::Result<()> {
    let (context, weights) = scenario_from_toml(SCENARIO)?;
    println!(
        "scenario `{}`: explanation budget {} ms, fit threshold {} ms\n",
        context.name(),
        context.explanation_budget_ms(),
        context.fit_threshold_ms()
    );

    let run = run(&RunConfig::new(Catalog::builtin(), context).with_axis_weights(weights))?;
    print!("{}", render_scores(&run, OutputFormat::AlignedText));

    // Weight sums are validated; a typo that breaks the sum is caught when
    // the scenario loads, not later in the pipeline.
    let broken = SCENARIO.replace("auditability = 0.8", "auditability = 0.9");
    let err = scenario_from_toml(&broken).unwrap_err();
    println!("\nrejected scenario: {err}");
    Ok(())
}
