// Project technique ratings onto the three stakeholder axes, adjust them
// for a deployment scenario, and discretise into qualitative levels.
//
// Run with `cargo run --example score_coordinates`.

use ess::{
    aggregate_axes, apply_context, discretise, render_scores, run, AxisWeights, Catalog,
    OutputFormat, RunConfig, ScenarioContext,
};

fn main() -> ess::Result<()> {
    run_example()
}

pub fn run_example() -> ess::Result<()> {
    let catalog = Catalog::builtin();
    let context = ScenarioContext::substitution();

    // Walk one technique through the stages by hand.
    let shap = catalog.get("shap").expect("builtin catalog has shap");
    let weights = AxisWeights::default();
    let raw = aggregate_axes(&shap.properties, &weights);
    let adjusted = apply_context(raw, &context);
    println!("SHAP raw axes:      C={:.2} U={:.2} D={:.2}", raw.c, raw.u, raw.d);
    println!(
        "SHAP adjusted axes: C={:.2} U={:.2} D={:.2}",
        adjusted.c, adjusted.u, adjusted.d
    );
    println!(
        "SHAP levels:        {} / {} / {}\n",
        discretise(adjusted.c),
        discretise(adjusted.u),
        discretise(adjusted.d)
    );

    // The pipeline does the same for the whole catalog and renders a table.
    let run = run(&RunConfig::new(catalog, context))?;
    print!("{}", render_scores(&run, OutputFormat::AlignedText));
    Ok(())
}
