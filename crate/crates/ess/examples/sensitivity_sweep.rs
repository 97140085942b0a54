// Sweep a scenario parameter across a grid and watch whether rankings and
// the tier plan hold steady.
//
// Run with `cargo run --example sensitivity_sweep`.

use ess::{
    render_sweep, sweep, AxisWeights, Catalog, OutputFormat, RoundingMode, ScenarioContext,
    SweepParameter, SweepSpec,
};

fn main() -> ess::Result<()> {
    run_example()
}

pub fn run_example() -> ess::Result<()> {
    let catalog = Catalog::builtin();
    let weights = AxisWeights::default();
    let context = ScenarioContext::substitution();

    // Varying the compliance multiplier leaves everything unchanged: the
    // stability column is Kendall tau-b between consecutive ratio rankings.
    let spec = SweepSpec::new(SweepParameter::GammaC, 1.0, 1.3, 0.05)?;
    let report = sweep(&catalog, &weights, &context, RoundingMode::default(), &spec)?;
    print!("{}", render_sweep(&report, OutputFormat::AlignedText));

    // Pushing the compliance selection weight up reshuffles the ranking;
    // the other two weights rescale proportionally to keep the sum at one.
    let spec = SweepSpec::new(SweepParameter::SelectionWeightC, 0.4, 0.8, 0.2)?;
    let report = sweep(&catalog, &weights, &context, RoundingMode::default(), &spec)?;
    println!();
    print!("{}", render_sweep(&report, OutputFormat::AlignedText));
    Ok(())
}
