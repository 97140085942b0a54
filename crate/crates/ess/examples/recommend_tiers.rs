// Turn selection results into a three-tier deployment plan: always-on,
// selectively triggered, and periodic offline.
//
// Run with `cargo run --example recommend_tiers`.

use ess::{render_plan, run, Catalog, OutputFormat, RunConfig, ScenarioContext};

fn main() -> ess::Result<()> {
    run_example()
}

pub fn run_example() -> ess::Result<()> {
    let catalog = Catalog::builtin();

    let comfortable = ScenarioContext::substitution();
    let run_ok = run(&RunConfig::new(catalog.clone(), comfortable))?;
    println!("explanation budget 100 ms:\n");
    print!("{}", render_plan(&run_ok, OutputFormat::AlignedText));

    // Shrink the budget until nothing fits online: tiers go empty and the
    // plan says why instead of failing.
    let tight = ScenarioContext::substitution()
        .with_latency_budget_ms(120.0)?
        .with_reserved_overhead_ms(100.0)?;
    let run_tight = run(&RunConfig::new(catalog, tight))?;
    println!("\nexplanation budget 20 ms:\n");
    print!("{}", render_plan(&run_tight, OutputFormat::AlignedText));
    Ok(())
}
