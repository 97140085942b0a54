// Score utility against resource cost, classify latency feasibility, and
// find the Pareto frontier.
//
// Run with `cargo run --example multi_objective`.

use ess::{
    pareto_frontier, rank, render_selection, run, Catalog, OutputFormat, RankKey, RoundingMode,
    RunConfig, ScenarioContext,
};

fn main() -> ess::Result<()> {
    run_example()
}

pub fn run_example() -> ess::Result<()> {
    let catalog = Catalog::builtin();
    let context = ScenarioContext::substitution();

    // Full precision carries exact utilities and costs into the ratio.
    let full = run(&RunConfig::new(catalog.clone(), context.clone()))?;
    println!("full precision:");
    print!("{}", render_selection(&full, OutputFormat::AlignedText));

    // Display rounding rounds utility and cost to two decimals first, which
    // can move a ratio by up to a tenth or so.
    let rounded = run(&RunConfig::new(catalog, context)
        .with_rounding(RoundingMode::DisplayRounded))?;
    println!("\ndisplay rounded:");
    print!("{}", render_selection(&rounded, OutputFormat::AlignedText));

    // Rank by any key; ties fall back to utility, then id.
    let by_ratio = rank(full.evaluations(), RankKey::Ratio);
    let order: Vec<&str> = by_ratio
        .iter()
        .map(|e| e.technique.id.as_str())
        .collect();
    println!("\nranking by efficiency ratio: {}", order.join(" > "));

    // The frontier keeps every technique no other one weakly dominates on
    // all three adjusted axes.
    let points: Vec<(String, _)> = full
        .evaluations()
        .iter()
        .map(|e| (e.technique.id.clone(), e.coordinates.adjusted()))
        .collect();
    let frontier = pareto_frontier(&points)?;
    let frontier: Vec<&str> = frontier.iter().map(String::as_str).collect();
    println!("pareto frontier: {{{}}}", frontier.join(", "));
    Ok(())
}
