// Load the built-in technique catalog, inspect it, and see what the
// validator rejects.
//
// Run with `cargo run --example builtin_catalog`.

use ess::Catalog;

fn main() -> ess::Result<()> {
    run_example()
}

pub fn run_example() -> ess::Result<()> {
    let catalog = Catalog::builtin();
    println!("built-in catalog: {} techniques\n", catalog.len());
    for technique in catalog.techniques() {
        let latency = match technique.latency.estimate_ms() {
            Some(ms) => format!("~{ms} ms online"),
            None => "offline only".to_string(),
        };
        println!(
            "  {:<6}  {:<16}  {:<20}  {latency}",
            technique.id, technique.name, technique.family
        );
    }

    // Catalogs are plain TOML. Structure errors and semantic errors are
    // reported separately; out-of-range ratings name the technique and field.
    let out_of_range = r#"
[[techniques]]
id = "probe"
name = "Probe"
family = "diagnostic"
modalities = ["tabular"]

[techniques.properties]
auditability = 6
traceability = 3
comprehensibility = 3
actionability = 3
fidelity = 3
debuggability = 3
efficiency = 3

[techniques.latency]
mode = "online"
estimate_ms = 10
"#;
    let err = Catalog::from_toml(out_of_range).unwrap_err();
    println!("\nrejected catalog: {err}");

    // Filtering by modality keeps catalog order.
    let tabular = catalog.filter_applicable("tabular");
    let vision = catalog.filter_applicable("vision");
    println!("\napplicable to tabular data: {}", tabular.len());
    println!("applicable to vision data: {}", vision.len());
    Ok(())
}
