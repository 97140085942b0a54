//! Decision support for choosing explainable-AI techniques under deployment
//! constraints.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod pipeline;
pub mod recommendation;
pub mod report;
pub mod rounding;
pub mod scoring;
pub mod selection;
pub mod sensitivity;

pub use catalog::{Catalog, LatencyMode, LatencyProfile, PropertyVector, Technique};
pub use error::{Error, Result};
pub use pipeline::{
    run, EngineRun, MachineDocument, ProvenanceRecord, ProvenanceTrail, RunConfig, ScoreRecord,
};
pub use scoring::{
    aggregate_axes, apply_context, discretise, scenario_from_path, scenario_from_toml,
    score_technique, AxisTriple, AxisWeights, ComplianceWeights, DeveloperWeights, EssCoordinates,
    LevelTriple, QualitativeLevel, ScenarioContext, SelectionWeights, UserWeights,
};
pub use recommendation::{synthesize_tiers, TierCriterion, TierPick, TierPlan};
pub use report::{
    render_catalog, render_plan, render_provenance, render_scores, render_selection, render_sweep,
    OutputFormat,
};
pub use selection::{
    classify_latency, efficiency_ratio, evaluate_catalog, pareto_frontier, rank, resource_cost,
    utility, FeasibilityClass, RankKey, RoundingMode, SelectionResult, TechniqueEvaluation,
};
pub use sensitivity::{
    kendall_tau_b, rank_stability, sweep, GridOutcome, GridPoint, SweepParameter, SweepReport,
    SweepSpec,
};
