//! End-to-end evaluation runs and their machine-readable documents.
//!
//! [`run`] ties the stages together: filter the catalog by modality, score
//! every technique, evaluate the selection objectives, synthesize the tier
//! plan, and record a provenance trail with one entry per stage. The result
//! can be serialized as a single JSON document whose layout is stable across
//! identical runs.

use std::collections::BTreeMap;

use chrono::{SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::catalog::{Catalog, PropertyVector};
use crate::error::{Error, Result};
use crate::recommendation::{synthesize_tiers, TierPlan};
use crate::rounding::{format_1dp, format_2dp};
use crate::scoring::{AxisTriple, AxisWeights, LevelTriple, ScenarioContext};
use crate::selection::{evaluate_catalog, RoundingMode, SelectionResult, TechniqueEvaluation};

/// Version stamped into machine documents.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Inputs for one evaluation run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    catalog: Catalog,
    context: ScenarioContext,
    axis_weights: AxisWeights,
    rounding: RoundingMode,
    modality: String,
    timestamps: bool,
}

impl RunConfig {
    /// A run over `catalog` in `context` with default axis weights, full
    /// precision, and the tabular modality.
    pub fn new(catalog: Catalog, context: ScenarioContext) -> Self {
        Self {
            catalog,
            context,
            axis_weights: AxisWeights::default(),
            rounding: RoundingMode::default(),
            modality: "tabular".to_string(),
            timestamps: false,
        }
    }

    pub fn with_axis_weights(mut self, axis_weights: AxisWeights) -> Self {
        self.axis_weights = axis_weights;
        self
    }

    pub fn with_rounding(mut self, rounding: RoundingMode) -> Self {
        self.rounding = rounding;
        self
    }

    /// Restrict the run to techniques supporting `modality`.
    pub fn with_modality(mut self, modality: impl Into<String>) -> Self {
        self.modality = modality.into();
        self
    }

    /// Stamp provenance records with the wall-clock time of the run. Off by
    /// default so identical runs stay byte-identical.
    pub fn with_timestamps(mut self, timestamps: bool) -> Self {
        self.timestamps = timestamps;
        self
    }
}

/// One row of the score table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub technique_id: String,
    pub name: String,
    pub raw: AxisTriple,
    pub adjusted: AxisTriple,
    pub levels: LevelTriple,
}

/// A single step in the provenance trail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProvenanceRecord {
    pub stage: String,
    /// SHA-256 of the canonical JSON form of the stage inputs.
    pub input_digest: String,
    pub parameters: Value,
    pub outputs: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timestamp: Option<String>,
}

/// Ordered trail of every stage that produced a number in the outputs.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ProvenanceTrail {
    pub records: Vec<ProvenanceRecord>,
}

impl ProvenanceTrail {
    pub fn get(&self, stage: &str) -> Option<&ProvenanceRecord> {
        self.records.iter().find(|r| r.stage == stage)
    }
}

/// Scenario block of the machine document: the context fields plus the axis
/// weights in force.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioDocument {
    #[serde(flatten)]
    pub context: ScenarioContext,
    pub axis_weights: AxisWeights,
}

/// Display strings for one score row, exactly as rendered tables show them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderedScore {
    pub c: String,
    pub u: String,
    pub d: String,
}

/// One score row of the machine document: full-precision values plus the
/// rendered strings.
#[derive(Debug, Clone, Serialize)]
pub struct ScoreDocumentRow {
    #[serde(flatten)]
    pub record: ScoreRecord,
    pub rendered: RenderedScore,
}

/// Display strings for one selection row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderedSelection {
    pub utility: String,
    pub resource_cost: String,
    pub efficiency_ratio: String,
}

/// One selection row of the machine document: full-precision values plus the
/// rendered strings.
#[derive(Debug, Clone, Serialize)]
pub struct SelectionDocumentRow {
    #[serde(flatten)]
    pub result: SelectionResult,
    pub rendered: RenderedSelection,
}

/// The machine-format document: one JSON object carrying the full run. Keys
/// serialize in declaration order, so identical runs produce byte-identical
/// output.
#[derive(Debug, Clone, Serialize)]
pub struct MachineDocument {
    pub catalog: Catalog,
    pub scenario: ScenarioDocument,
    pub scores: Vec<ScoreDocumentRow>,
    pub selection: Vec<SelectionDocumentRow>,
    pub plan: TierPlan,
    pub provenance: ProvenanceTrail,
    pub engine_version: String,
}

/// Everything produced by one evaluation run.
#[derive(Debug, Clone)]
pub struct EngineRun {
    catalog: Catalog,
    context: ScenarioContext,
    axis_weights: AxisWeights,
    rounding: RoundingMode,
    evaluations: Vec<TechniqueEvaluation>,
    plan: TierPlan,
    provenance: ProvenanceTrail,
}

impl EngineRun {
    /// The techniques that were actually evaluated (after modality filtering).
    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn context(&self) -> &ScenarioContext {
        &self.context
    }

    pub fn axis_weights(&self) -> &AxisWeights {
        &self.axis_weights
    }

    pub fn rounding(&self) -> RoundingMode {
        self.rounding
    }

    pub fn evaluations(&self) -> &[TechniqueEvaluation] {
        &self.evaluations
    }

    pub fn plan(&self) -> &TierPlan {
        &self.plan
    }

    pub fn provenance(&self) -> &ProvenanceTrail {
        &self.provenance
    }

    pub fn score_records(&self) -> Vec<ScoreRecord> {
        self.evaluations
            .iter()
            .map(|e| ScoreRecord {
                technique_id: e.technique.id.clone(),
                name: e.technique.name.clone(),
                raw: e.coordinates.raw(),
                adjusted: e.coordinates.adjusted(),
                levels: e.coordinates.levels(),
            })
            .collect()
    }

    pub fn selection_records(&self) -> Vec<SelectionResult> {
        self.evaluations.iter().map(|e| e.selection.clone()).collect()
    }

    pub fn to_machine_document(&self) -> MachineDocument {
        let scores = self
            .score_records()
            .into_iter()
            .map(|record| {
                let rendered = RenderedScore {
                    c: format_2dp(record.adjusted.c),
                    u: format_2dp(record.adjusted.u),
                    d: format_2dp(record.adjusted.d),
                };
                ScoreDocumentRow { record, rendered }
            })
            .collect();
        let selection = self
            .selection_records()
            .into_iter()
            .map(|result| {
                let rendered = RenderedSelection {
                    utility: format_2dp(result.utility),
                    resource_cost: format_2dp(result.resource_cost),
                    efficiency_ratio: format_1dp(result.efficiency_ratio),
                };
                SelectionDocumentRow { result, rendered }
            })
            .collect();
        MachineDocument {
            catalog: self.catalog.clone(),
            scenario: ScenarioDocument {
                context: self.context.clone(),
                axis_weights: self.axis_weights,
            },
            scores,
            selection,
            plan: self.plan.clone(),
            provenance: self.provenance.clone(),
            engine_version: ENGINE_VERSION.to_string(),
        }
    }

    /// The machine document as pretty-printed JSON with a trailing newline.
    pub fn machine_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(&self.to_machine_document()).expect("document serializes");
        text.push('\n');
        text
    }
}

/// Evaluate a catalog in a scenario and return the full run record.
pub fn run(config: &RunConfig) -> Result<EngineRun> {
    let applicable = config.catalog.filter_applicable(&config.modality);
    if applicable.is_empty() {
        return Err(if config.catalog.is_empty() {
            Error::EmptyCatalog
        } else {
            Error::NoApplicableTechniques {
                modality: config.modality.clone(),
            }
        });
    }
    let evaluations = evaluate_catalog(
        &applicable,
        &config.axis_weights,
        &config.context,
        config.rounding,
    )?;
    let plan = synthesize_tiers(&evaluations)?;
    let provenance = build_trail(config, &applicable, &evaluations, &plan);
    Ok(EngineRun {
        catalog: applicable,
        context: config.context.clone(),
        axis_weights: config.axis_weights,
        rounding: config.rounding,
        evaluations,
        plan,
        provenance,
    })
}

fn digest(value: &impl Serialize) -> String {
    let canonical = serde_json::to_string(value).expect("digest input serializes");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    format!("sha256:{}", hex::encode(hasher.finalize()))
}

fn build_trail(
    config: &RunConfig,
    catalog: &Catalog,
    evaluations: &[TechniqueEvaluation],
    plan: &TierPlan,
) -> ProvenanceTrail {
    let timestamp = config
        .timestamps
        .then(|| Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true));
    let ctx = &config.context;

    let ids: Vec<&str> = catalog.techniques().iter().map(|t| t.id.as_str()).collect();
    let properties: BTreeMap<&str, &PropertyVector> = catalog
        .techniques()
        .iter()
        .map(|t| (t.id.as_str(), &t.properties))
        .collect();
    let raw: BTreeMap<&str, AxisTriple> = evaluations
        .iter()
        .map(|e| (e.technique.id.as_str(), e.coordinates.raw()))
        .collect();
    let adjusted: BTreeMap<&str, AxisTriple> = evaluations
        .iter()
        .map(|e| (e.technique.id.as_str(), e.coordinates.adjusted()))
        .collect();
    let levels: BTreeMap<&str, LevelTriple> = evaluations
        .iter()
        .map(|e| (e.technique.id.as_str(), e.coordinates.levels()))
        .collect();
    let selected: BTreeMap<&str, &SelectionResult> = evaluations
        .iter()
        .map(|e| (e.technique.id.as_str(), &e.selection))
        .collect();

    let records = vec![
        ProvenanceRecord {
            stage: "catalog".to_string(),
            input_digest: digest(catalog),
            parameters: json!({
                "modality": config.modality,
                "technique_count": catalog.len(),
            }),
            outputs: json!({ "technique_ids": ids }),
            timestamp: timestamp.clone(),
        },
        ProvenanceRecord {
            stage: "aggregation".to_string(),
            input_digest: digest(&properties),
            parameters: serde_json::to_value(config.axis_weights).expect("weights serialize"),
            outputs: json!(raw),
            timestamp: timestamp.clone(),
        },
        ProvenanceRecord {
            stage: "adjustment".to_string(),
            input_digest: digest(&raw),
            parameters: json!({
                "gamma_c": ctx.gamma_c(),
                "gamma_u": ctx.gamma_u(),
                "gamma_d": ctx.gamma_d(),
            }),
            outputs: json!(adjusted),
            timestamp: timestamp.clone(),
        },
        ProvenanceRecord {
            stage: "discretisation".to_string(),
            input_digest: digest(&adjusted),
            parameters: json!({
                "bands": { "low": "[1.0, 2.5)", "medium": "[2.5, 3.5)", "high": "[3.5, 5.0]" },
            }),
            outputs: json!(levels),
            timestamp: timestamp.clone(),
        },
        ProvenanceRecord {
            stage: "selection".to_string(),
            input_digest: digest(&adjusted),
            parameters: json!({
                "selection_weights": ctx.selection_weights(),
                "rounding": config.rounding,
                "latency_budget_ms": ctx.latency_budget_ms(),
                "reserved_overhead_ms": ctx.reserved_overhead_ms(),
                "fit_fraction": ctx.fit_fraction(),
                "explanation_budget_ms": ctx.explanation_budget_ms(),
                "fit_threshold_ms": ctx.fit_threshold_ms(),
            }),
            outputs: json!(selected),
            timestamp: timestamp.clone(),
        },
        ProvenanceRecord {
            stage: "recommendation".to_string(),
            input_digest: digest(&selected),
            parameters: json!({
                "tier_criteria": {
                    "tier1": "efficiency_ratio",
                    "tier2": "user_axis",
                    "tier3": "compliance_axis",
                },
            }),
            outputs: json!(plan),
            timestamp,
        },
    ];
    ProvenanceTrail { records }
}
