//! Command-line interface: `validate`, `score`, `select`, `recommend`,
//! and `sweep` subcommands over the evaluation pipeline.
//!
//! Exit codes are consistent across subcommands: 0 on success, 1 for domain
//! failures (validation errors, no applicable techniques), 2 for usage, I/O,
//! or parse failures. Documents go to standard output (or `--out`),
//! diagnostics to standard error. Setting `ESS_NO_COLOR` disables terminal
//! styling.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::pipeline::{run, EngineRun, RunConfig};
use crate::report::{
    render_plan, render_scores, render_selection, render_sweep, OutputFormat,
};
use crate::scoring::{scenario_from_path, AxisWeights, ScenarioContext};
use crate::selection::RoundingMode;
use crate::sensitivity::{sweep, SweepParameter, SweepSpec};

/// Decision support for choosing explainable-AI techniques under deployment
/// constraints.
#[derive(Debug, Parser)]
#[command(name = "ess", version, about)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Load the catalog and scenario and report whether they are valid.
    Validate(SharedArgs),
    /// Print adjusted axis scores and qualitative levels per technique.
    Score(SharedArgs),
    /// Print utility, cost, efficiency ratio, and feasibility per technique.
    Select(SharedArgs),
    /// Print the three-tier deployment plan.
    Recommend(RecommendArgs),
    /// Re-evaluate across a parameter grid and report rank stability.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct SharedArgs {
    /// Catalog TOML path, or "builtin" for the embedded catalog.
    #[arg(long, default_value = "builtin")]
    catalog: String,

    /// Scenario TOML path, or "substitution" for the embedded scenario.
    #[arg(long, default_value = "substitution")]
    scenario: String,

    /// Keep only techniques supporting this input modality.
    #[arg(long, default_value = "tabular")]
    modality: String,

    /// Rounding discipline for efficiency ratios.
    #[arg(long, value_enum, default_value_t = RoundingArg::Full)]
    rounding: RoundingArg,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,

    /// Write the document to this path instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Stamp provenance records with the current time.
    #[arg(long)]
    timestamps: bool,
}

#[derive(Debug, Args)]
struct RecommendArgs {
    #[command(flatten)]
    shared: SharedArgs,

    /// Override the scenario's end-to-end latency budget (ms).
    #[arg(long = "budget-ms", value_name = "MS")]
    budget_ms: Option<f64>,

    /// Override the scenario's reserved model-inference overhead (ms).
    #[arg(long = "reserved-ms", value_name = "MS")]
    reserved_ms: Option<f64>,

    /// Override the fraction of the explanation budget a technique must fit
    /// within to count as a comfortable fit.
    #[arg(long = "fit-fraction", value_name = "FRACTION")]
    fit_fraction: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    shared: SharedArgs,

    /// Parameter to sweep.
    #[arg(long = "param", value_enum)]
    param: ParamArg,

    /// First grid value.
    #[arg(long)]
    from: f64,

    /// Last grid value (inclusive).
    #[arg(long)]
    to: f64,

    /// Grid step (must be positive).
    #[arg(long)]
    step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RoundingArg {
    /// Round utility and cost to two decimals before forming the ratio.
    Paper,
    /// Carry full precision through the ratio.
    Full,
}

impl From<RoundingArg> for RoundingMode {
    fn from(arg: RoundingArg) -> Self {
        match arg {
            RoundingArg::Paper => RoundingMode::DisplayRounded,
            RoundingArg::Full => RoundingMode::FullPrecision,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    /// Space-aligned table.
    Table,
    /// Comma-separated values.
    Csv,
    /// Machine-readable JSON document.
    Machine,
}

impl From<FormatArg> for OutputFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Table => OutputFormat::AlignedText,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Machine => OutputFormat::Machine,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum ParamArg {
    GammaC,
    GammaU,
    GammaD,
    SelectionWeightC,
    SelectionWeightU,
    SelectionWeightD,
    FitFraction,
}

impl From<ParamArg> for SweepParameter {
    fn from(arg: ParamArg) -> Self {
        match arg {
            ParamArg::GammaC => SweepParameter::GammaC,
            ParamArg::GammaU => SweepParameter::GammaU,
            ParamArg::GammaD => SweepParameter::GammaD,
            ParamArg::SelectionWeightC => SweepParameter::SelectionWeightC,
            ParamArg::SelectionWeightU => SweepParameter::SelectionWeightU,
            ParamArg::SelectionWeightD => SweepParameter::SelectionWeightD,
            ParamArg::FitFraction => SweepParameter::FitFraction,
        }
    }
}

/// Parse the process arguments and run one subcommand, returning the exit
/// code for the process.
pub fn main() -> ExitCode {
    let color = if no_color_requested() {
        clap::ColorChoice::Never
    } else {
        clap::ColorChoice::Auto
    };
    let matches = match Cli::command().color(color).try_get_matches() {
        Ok(matches) => matches,
        // Prints help/version (exit 0) or the usage error (exit 2).
        Err(err) => err.exit(),
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(err) => err.exit(),
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(if err.is_input_error() { 2 } else { 1 })
        }
    }
}

fn no_color_requested() -> bool {
    std::env::var_os("ESS_NO_COLOR").is_some_and(|value| !value.is_empty())
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate(shared) => cmd_validate(&shared),
        Command::Score(shared) => {
            let run = build_run(&shared, None)?;
            emit(&shared, render_scores(&run, shared.format.into()))
        }
        Command::Select(shared) => {
            let run = build_run(&shared, None)?;
            emit(&shared, render_selection(&run, shared.format.into()))
        }
        Command::Recommend(args) => {
            let run = build_run(&args.shared, Some(&args))?;
            emit(&args.shared, render_plan(&run, args.shared.format.into()))
        }
        Command::Sweep(args) => cmd_sweep(&args),
    }
}

fn load_catalog(source: &str) -> Result<Catalog> {
    if source == "builtin" {
        Ok(Catalog::builtin())
    } else {
        Catalog::from_path(source)
    }
}

fn load_scenario(source: &str) -> Result<(ScenarioContext, AxisWeights)> {
    if source == "substitution" {
        Ok((ScenarioContext::substitution(), AxisWeights::default()))
    } else {
        scenario_from_path(source)
    }
}

fn build_run(shared: &SharedArgs, overrides: Option<&RecommendArgs>) -> Result<EngineRun> {
    let catalog = load_catalog(&shared.catalog)?;
    let (mut context, weights) = load_scenario(&shared.scenario)?;
    if let Some(args) = overrides {
        if let Some(budget) = args.budget_ms {
            context = context.with_latency_budget_ms(budget)?;
        }
        if let Some(reserved) = args.reserved_ms {
            context = context.with_reserved_overhead_ms(reserved)?;
        }
        if let Some(fraction) = args.fit_fraction {
            context = context.with_fit_fraction(fraction)?;
        }
    }
    run(&RunConfig::new(catalog, context)
        .with_axis_weights(weights)
        .with_rounding(shared.rounding.into())
        .with_modality(shared.modality.clone())
        .with_timestamps(shared.timestamps))
}

fn cmd_validate(shared: &SharedArgs) -> Result<()> {
    let catalog = load_catalog(&shared.catalog)?;
    let (context, _) = load_scenario(&shared.scenario)?;
    let applicable = catalog.filter_applicable(&shared.modality);
    let mut findings = String::new();
    let _ = writeln!(
        findings,
        "catalog: {} technique(s), all ratings and latency profiles valid",
        catalog.len()
    );
    let _ = writeln!(
        findings,
        "scenario `{}`: valid (explanation budget {} ms, fit threshold {} ms)",
        context.name(),
        context.explanation_budget_ms(),
        context.fit_threshold_ms()
    );
    let _ = writeln!(
        findings,
        "modality `{}`: {} applicable technique(s)",
        shared.modality,
        applicable.len()
    );
    emit(shared, findings)
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let shared = &args.shared;
    let catalog = load_catalog(&shared.catalog)?;
    let (context, weights) = load_scenario(&shared.scenario)?;
    let applicable = catalog.filter_applicable(&shared.modality);
    if applicable.is_empty() {
        return Err(if catalog.is_empty() {
            Error::EmptyCatalog
        } else {
            Error::NoApplicableTechniques {
                modality: shared.modality.clone(),
            }
        });
    }
    let spec = SweepSpec::new(args.param.into(), args.from, args.to, args.step)?;
    let report = sweep(&applicable, &weights, &context, shared.rounding.into(), &spec)?;
    emit(shared, render_sweep(&report, shared.format.into()))
}

fn emit(shared: &SharedArgs, document: String) -> Result<()> {
    match &shared.out {
        Some(path) => fs::write(path, document).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{document}");
            Ok(())
        }
    }
}
