//! Projection of property vectors onto the three stakeholder axes, scenario
//! adjustment with clipping, and discretisation into qualitative levels.
//!
//! The three axes are Compliance (weighted auditability and traceability),
//! User (comprehensibility and actionability), and Developer (fidelity,
//! debuggability, efficiency). A scenario scales each axis by a contextual
//! multiplier and the result is clipped back to the rating range.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog::{PropertyVector, Technique, RATING_MAX, RATING_MIN};
use crate::error::{Error, Result};

const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// One value per axis: compliance `c`, user `u`, developer `d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisTriple {
    pub c: f64,
    pub u: f64,
    pub d: f64,
}

impl AxisTriple {
    pub fn new(c: f64, u: f64, d: f64) -> Self {
        Self { c, u, d }
    }
}

/// Discretised band for an adjusted axis score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QualitativeLevel {
    Low,
    Medium,
    High,
}

impl fmt::Display for QualitativeLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            QualitativeLevel::Low => "Low",
            QualitativeLevel::Medium => "Medium",
            QualitativeLevel::High => "High",
        };
        f.write_str(label)
    }
}

/// One qualitative level per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelTriple {
    pub c: QualitativeLevel,
    pub u: QualitativeLevel,
    pub d: QualitativeLevel,
}

/// Weights folding auditability and traceability into the Compliance axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawComplianceWeights")]
pub struct ComplianceWeights {
    auditability: f64,
    traceability: f64,
}

impl ComplianceWeights {
    pub fn new(auditability: f64, traceability: f64) -> Result<Self> {
        check_weights(
            "compliance axis weights",
            &[("auditability", auditability), ("traceability", traceability)],
        )?;
        Ok(Self {
            auditability,
            traceability,
        })
    }

    pub fn auditability(&self) -> f64 {
        self.auditability
    }

    pub fn traceability(&self) -> f64 {
        self.traceability
    }
}

impl Default for ComplianceWeights {
    fn default() -> Self {
        Self {
            auditability: 0.6,
            traceability: 0.4,
        }
    }
}

/// Weights folding comprehensibility and actionability into the User axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawUserWeights")]
pub struct UserWeights {
    comprehensibility: f64,
    actionability: f64,
}

impl UserWeights {
    pub fn new(comprehensibility: f64, actionability: f64) -> Result<Self> {
        check_weights(
            "user axis weights",
            &[
                ("comprehensibility", comprehensibility),
                ("actionability", actionability),
            ],
        )?;
        Ok(Self {
            comprehensibility,
            actionability,
        })
    }

    pub fn comprehensibility(&self) -> f64 {
        self.comprehensibility
    }

    pub fn actionability(&self) -> f64 {
        self.actionability
    }
}

impl Default for UserWeights {
    fn default() -> Self {
        Self {
            comprehensibility: 0.6,
            actionability: 0.4,
        }
    }
}

/// Weights folding fidelity, debuggability, and efficiency into the Developer
/// axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDeveloperWeights")]
pub struct DeveloperWeights {
    fidelity: f64,
    debuggability: f64,
    efficiency: f64,
}

impl DeveloperWeights {
    pub fn new(fidelity: f64, debuggability: f64, efficiency: f64) -> Result<Self> {
        check_weights(
            "developer axis weights",
            &[
                ("fidelity", fidelity),
                ("debuggability", debuggability),
                ("efficiency", efficiency),
            ],
        )?;
        Ok(Self {
            fidelity,
            debuggability,
            efficiency,
        })
    }

    pub fn fidelity(&self) -> f64 {
        self.fidelity
    }

    pub fn debuggability(&self) -> f64 {
        self.debuggability
    }

    pub fn efficiency(&self) -> f64 {
        self.efficiency
    }
}

impl Default for DeveloperWeights {
    fn default() -> Self {
        Self {
            fidelity: 0.5,
            debuggability: 0.4,
            efficiency: 0.1,
        }
    }
}

/// Per-axis aggregation weights. Each axis's weights are non-negative and sum
/// to one, so axis scores stay inside the rating range.
///
/// The defaults (0.6/0.4 compliance, 0.6/0.4 user, 0.5/0.4/0.1 developer) are
/// first-order stakeholder priorities; override them per scenario to study
/// alternatives.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawAxisWeights")]
pub struct AxisWeights {
    compliance: ComplianceWeights,
    user: UserWeights,
    developer: DeveloperWeights,
}

impl AxisWeights {
    pub fn new(
        compliance: ComplianceWeights,
        user: UserWeights,
        developer: DeveloperWeights,
    ) -> Self {
        Self {
            compliance,
            user,
            developer,
        }
    }

    pub fn compliance(&self) -> &ComplianceWeights {
        &self.compliance
    }

    pub fn user(&self) -> &UserWeights {
        &self.user
    }

    pub fn developer(&self) -> &DeveloperWeights {
        &self.developer
    }
}

/// Weights combining the three adjusted axis scores into a single utility.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSelectionWeights")]
pub struct SelectionWeights {
    compliance: f64,
    user: f64,
    developer: f64,
}

impl SelectionWeights {
    pub fn new(compliance: f64, user: f64, developer: f64) -> Result<Self> {
        check_weights(
            "selection weights",
            &[
                ("compliance", compliance),
                ("user", user),
                ("developer", developer),
            ],
        )?;
        Ok(Self {
            compliance,
            user,
            developer,
        })
    }

    pub fn compliance(&self) -> f64 {
        self.compliance
    }

    pub fn user(&self) -> f64 {
        self.user
    }

    pub fn developer(&self) -> f64 {
        self.developer
    }
}

fn check_weights(subject: &str, weights: &[(&str, f64)]) -> Result<()> {
    for (field, value) in weights {
        if !value.is_finite() || *value < 0.0 {
            return Err(Error::validation(
                subject,
                *field,
                format!("must be a non-negative number, got {value}"),
            ));
        }
    }
    let sum: f64 = weights.iter().map(|(_, v)| v).sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        let fields: Vec<&str> = weights.iter().map(|(f, _)| *f).collect();
        return Err(Error::validation(
            subject,
            fields.join("+"),
            format!("must sum to 1.0, got {sum}"),
        ));
    }
    Ok(())
}

/// A deployment scenario: per-axis contextual multipliers, the latency
/// envelope, and the utility weights used during selection.
///
/// `latency_budget_ms` is the end-to-end budget for a decision;
/// `reserved_overhead_ms` is the part consumed before any explanation runs.
/// The remainder is the explanation budget, and `fit_fraction` marks how much
/// of it a technique may use while still being called a comfortable fit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioContext {
    name: String,
    gamma_c: f64,
    gamma_u: f64,
    gamma_d: f64,
    latency_budget_ms: f64,
    reserved_overhead_ms: f64,
    fit_fraction: f64,
    selection_weights: SelectionWeights,
}

impl ScenarioContext {
    pub fn new(
        name: impl Into<String>,
        gamma: (f64, f64, f64),
        latency_budget_ms: f64,
        reserved_overhead_ms: f64,
        fit_fraction: f64,
        selection_weights: SelectionWeights,
    ) -> Result<Self> {
        let ctx = Self {
            name: name.into(),
            gamma_c: gamma.0,
            gamma_u: gamma.1,
            gamma_d: gamma.2,
            latency_budget_ms,
            reserved_overhead_ms,
            fit_fraction,
            selection_weights,
        };
        ctx.check()?;
        Ok(ctx)
    }

    /// The built-in model-substitution scenario: compliance and user pressure
    /// raised (1.15 / 1.10), developer neutral, a 200 ms decision budget with
    /// 100 ms reserved, fit fraction 0.8, and selection weights (0.4, 0.4, 0.2).
    pub fn substitution() -> Self {
        Self {
            name: "substitution".to_owned(),
            gamma_c: 1.15,
            gamma_u: 1.10,
            gamma_d: 1.00,
            latency_budget_ms: 200.0,
            reserved_overhead_ms: 100.0,
            fit_fraction: 0.8,
            selection_weights: SelectionWeights {
                compliance: 0.4,
                user: 0.4,
                developer: 0.2,
            },
        }
    }

    fn check(&self) -> Result<()> {
        let subject = format!("scenario `{}`", self.name);
        if self.name.is_empty() {
            return Err(Error::validation("scenario", "name", "must not be empty"));
        }
        for (field, value) in [
            ("gamma_c", self.gamma_c),
            ("gamma_u", self.gamma_u),
            ("gamma_d", self.gamma_d),
        ] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::validation(
                    &subject,
                    field,
                    format!("must be a non-negative number, got {value}"),
                ));
            }
        }
        if !self.latency_budget_ms.is_finite() || self.latency_budget_ms <= 0.0 {
            return Err(Error::validation(
                &subject,
                "latency_budget_ms",
                format!("must be positive, got {}", self.latency_budget_ms),
            ));
        }
        if !self.reserved_overhead_ms.is_finite() || self.reserved_overhead_ms < 0.0 {
            return Err(Error::validation(
                &subject,
                "reserved_overhead_ms",
                format!("must be non-negative, got {}", self.reserved_overhead_ms),
            ));
        }
        if self.reserved_overhead_ms >= self.latency_budget_ms {
            return Err(Error::validation(
                &subject,
                "reserved_overhead_ms",
                format!(
                    "must be below latency_budget_ms = {}, got {}",
                    self.latency_budget_ms, self.reserved_overhead_ms
                ),
            ));
        }
        if !self.fit_fraction.is_finite() || self.fit_fraction <= 0.0 || self.fit_fraction > 1.0 {
            return Err(Error::validation(
                &subject,
                "fit_fraction",
                format!("must lie in (0, 1], got {}", self.fit_fraction),
            ));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gamma_c(&self) -> f64 {
        self.gamma_c
    }

    pub fn gamma_u(&self) -> f64 {
        self.gamma_u
    }

    pub fn gamma_d(&self) -> f64 {
        self.gamma_d
    }

    pub fn latency_budget_ms(&self) -> f64 {
        self.latency_budget_ms
    }

    pub fn reserved_overhead_ms(&self) -> f64 {
        self.reserved_overhead_ms
    }

    pub fn fit_fraction(&self) -> f64 {
        self.fit_fraction
    }

    pub fn selection_weights(&self) -> SelectionWeights {
        self.selection_weights
    }

    /// Milliseconds left for the explanation once overhead is reserved.
    pub fn explanation_budget_ms(&self) -> f64 {
        self.latency_budget_ms - self.reserved_overhead_ms
    }

    /// Largest estimate still considered a comfortable fit.
    pub fn fit_threshold_ms(&self) -> f64 {
        self.fit_fraction * self.explanation_budget_ms()
    }

    pub fn with_gamma_c(mut self, gamma_c: f64) -> Result<Self> {
        self.gamma_c = gamma_c;
        self.check()?;
        Ok(self)
    }

    pub fn with_gamma_u(mut self, gamma_u: f64) -> Result<Self> {
        self.gamma_u = gamma_u;
        self.check()?;
        Ok(self)
    }

    pub fn with_gamma_d(mut self, gamma_d: f64) -> Result<Self> {
        self.gamma_d = gamma_d;
        self.check()?;
        Ok(self)
    }

    pub fn with_latency_budget_ms(mut self, latency_budget_ms: f64) -> Result<Self> {
        self.latency_budget_ms = latency_budget_ms;
        self.check()?;
        Ok(self)
    }

    pub fn with_reserved_overhead_ms(mut self, reserved_overhead_ms: f64) -> Result<Self> {
        self.reserved_overhead_ms = reserved_overhead_ms;
        self.check()?;
        Ok(self)
    }

    pub fn with_fit_fraction(mut self, fit_fraction: f64) -> Result<Self> {
        self.fit_fraction = fit_fraction;
        self.check()?;
        Ok(self)
    }

    pub fn with_selection_weights(mut self, selection_weights: SelectionWeights) -> Self {
        self.selection_weights = selection_weights;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Result<Self> {
        self.name = name.into();
        self.check()?;
        Ok(self)
    }
}

/// Raw, adjusted, and discretised axis scores for one technique.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EssCoordinates {
    raw: AxisTriple,
    adjusted: AxisTriple,
    levels: LevelTriple,
}

impl EssCoordinates {
    pub fn raw(&self) -> AxisTriple {
        self.raw
    }

    pub fn adjusted(&self) -> AxisTriple {
        self.adjusted
    }

    pub fn levels(&self) -> LevelTriple {
        self.levels
    }
}

/// Folds the seven properties into per-axis raw scores. With convex weights
/// the result stays inside the rating range.
pub fn aggregate_axes(p: &PropertyVector, w: &AxisWeights) -> AxisTriple {
    AxisTriple {
        c: w.compliance.auditability * p.auditability() + w.compliance.traceability * p.traceability(),
        u: w.user.comprehensibility * p.comprehensibility()
            + w.user.actionability * p.actionability(),
        d: w.developer.fidelity * p.fidelity()
            + w.developer.debuggability * p.debuggability()
            + w.developer.efficiency * p.efficiency(),
    }
}

/// Scales each raw axis score by the scenario's multiplier and clips the
/// result back to the rating range.
pub fn apply_context(raw: AxisTriple, ctx: &ScenarioContext) -> AxisTriple {
    let clip = |v: f64| v.clamp(RATING_MIN, RATING_MAX);
    AxisTriple {
        c: clip(ctx.gamma_c * raw.c),
        u: clip(ctx.gamma_u * raw.u),
        d: clip(ctx.gamma_d * raw.d),
    }
}

/// Maps an adjusted score to its qualitative band: Low on [1.0, 2.5), Medium
/// on [2.5, 3.5), High on [3.5, 5.0]. The bands partition the whole range, so
/// every in-range score lands in exactly one.
pub fn discretise(score: f64) -> QualitativeLevel {
    if score < 2.5 {
        QualitativeLevel::Low
    } else if score < 3.5 {
        QualitativeLevel::Medium
    } else {
        QualitativeLevel::High
    }
}

/// Scores a technique end to end: aggregate, adjust, discretise.
pub fn score_technique(t: &Technique, w: &AxisWeights, ctx: &ScenarioContext) -> EssCoordinates {
    let raw = aggregate_axes(&t.properties, w);
    let adjusted = apply_context(raw, ctx);
    let levels = LevelTriple {
        c: discretise(adjusted.c),
        u: discretise(adjusted.u),
        d: discretise(adjusted.d),
    };
    EssCoordinates {
        raw,
        adjusted,
        levels,
    }
}

/// Parses a scenario document: the context fields plus an optional
/// `axis_weights` override (all three axes required when present). Returns the
/// context together with the axis weights in effect.
pub fn scenario_from_toml(text: &str) -> Result<(ScenarioContext, AxisWeights)> {
    let raw: RawScenarioFile = toml::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
    let selection_weights = SelectionWeights::new(
        raw.selection_weights.compliance,
        raw.selection_weights.user,
        raw.selection_weights.developer,
    )?;
    let context = ScenarioContext::new(
        raw.name,
        (raw.gamma_c, raw.gamma_u, raw.gamma_d),
        raw.latency_budget_ms,
        raw.reserved_overhead_ms,
        raw.fit_fraction,
        selection_weights,
    )?;
    let axis_weights = match raw.axis_weights {
        Some(raw) => AxisWeights::try_from(raw)?,
        None => AxisWeights::default(),
    };
    Ok((context, axis_weights))
}

/// Reads and parses a scenario file from disk.
pub fn scenario_from_path(path: impl AsRef<Path>) -> Result<(ScenarioContext, AxisWeights)> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    scenario_from_toml(&text)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenarioFile {
    name: String,
    gamma_c: f64,
    gamma_u: f64,
    gamma_d: f64,
    latency_budget_ms: f64,
    reserved_overhead_ms: f64,
    fit_fraction: f64,
    selection_weights: RawSelectionWeights,
    axis_weights: Option<RawAxisWeights>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSelectionWeights {
    compliance: f64,
    user: f64,
    developer: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxisWeights {
    compliance: RawComplianceWeights,
    user: RawUserWeights,
    developer: RawDeveloperWeights,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplianceWeights {
    auditability: f64,
    traceability: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawUserWeights {
    comprehensibility: f64,
    actionability: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDeveloperWeights {
    fidelity: f64,
    debuggability: f64,
    efficiency: f64,
}

impl TryFrom<RawSelectionWeights> for SelectionWeights {
    type Error = Error;

    fn try_from(raw: RawSelectionWeights) -> Result<Self> {
        Self::new(raw.compliance, raw.user, raw.developer)
    }
}

impl TryFrom<RawComplianceWeights> for ComplianceWeights {
    type Error = Error;

    fn try_from(raw: RawComplianceWeights) -> Result<Self> {
        Self::new(raw.auditability, raw.traceability)
    }
}

impl TryFrom<RawUserWeights> for UserWeights {
    type Error = Error;

    fn try_from(raw: RawUserWeights) -> Result<Self> {
        Self::new(raw.comprehensibility, raw.actionability)
    }
}

impl TryFrom<RawDeveloperWeights> for DeveloperWeights {
    type Error = Error;

    fn try_from(raw: RawDeveloperWeights) -> Result<Self> {
        Self::new(raw.fidelity, raw.debuggability, raw.efficiency)
    }
}

impl TryFrom<RawAxisWeights> for AxisWeights {
    type Error = Error;

    fn try_from(raw: RawAxisWeights) -> Result<Self> {
        Ok(Self::new(
            raw.compliance.try_into()?,
            raw.user.try_into()?,
            raw.developer.try_into()?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;
    use crate::catalog::Catalog;

    fn triple_eq(actual: AxisTriple, expected: (f64, f64, f64)) {
        assert_abs_diff_eq!(actual.c, expected.0, epsilon = 1e-9);
        assert_abs_diff_eq!(actual.u, expected.1, epsilon = 1e-9);
        assert_abs_diff_eq!(actual.d, expected.2, epsilon = 1e-9);
    }

    fn identity_scenario() -> ScenarioContext {
        ScenarioContext::new(
            "identity",
            (1.0, 1.0, 1.0),
            200.0,
            100.0,
            0.8,
            SelectionWeights::new(0.4, 0.4, 0.2).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn aggregates_axes_with_default_weights() {
        let catalog = Catalog::builtin();
        let weights = AxisWeights::default();

        let shap = aggregate_axes(&catalog.get("shap").unwrap().properties, &weights);
        triple_eq(shap, (3.40, 3.00, 4.70));

        let proto = aggregate_axes(&catalog.get("proto").unwrap().properties, &weights);
        triple_eq(proto, (2.00, 4.60, 3.00));

        let ones = PropertyVector::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        triple_eq(aggregate_axes(&ones, &weights), (1.0, 1.0, 1.0));
    }

    #[test]
    fn applies_substitution_multipliers_with_clipping() {
        let sub = ScenarioContext::substitution();

        triple_eq(
            apply_context(AxisTriple::new(3.40, 3.00, 4.70), &sub),
            (3.91, 3.30, 4.70),
        );
        // upper clip binds on the compliance axis
        triple_eq(
            apply_context(AxisTriple::new(5.00, 2.60, 3.80), &sub),
            (5.00, 2.86, 3.80),
        );
        // 4.60 * 1.10 = 5.06 clips to 5.00 on the user axis
        triple_eq(
            apply_context(AxisTriple::new(2.00, 4.60, 3.00), &sub),
            (2.30, 5.00, 3.00),
        );

        let raw = AxisTriple::new(1.7, 4.2, 2.9);
        assert_eq!(apply_context(raw, &identity_scenario()), raw);
    }

    #[test]
    fn lower_clip_binds_for_shrinking_multipliers() {
        let ctx = identity_scenario().with_gamma_c(0.1).unwrap();
        let adjusted = apply_context(AxisTriple::new(3.0, 3.0, 3.0), &ctx);
        assert_eq!(adjusted.c, 1.0);
    }

    #[test]
    fn discretises_into_half_open_bands() {
        assert_eq!(discretise(1.00), QualitativeLevel::Low);
        assert_eq!(discretise(2.30), QualitativeLevel::Low);
        assert_eq!(discretise(2.499999), QualitativeLevel::Low);
        assert_eq!(discretise(2.5), QualitativeLevel::Medium);
        assert_eq!(discretise(2.86), QualitativeLevel::Medium);
        assert_eq!(discretise(3.499999), QualitativeLevel::Medium);
        assert_eq!(discretise(3.50), QualitativeLevel::High);
        assert_eq!(discretise(5.00), QualitativeLevel::High);
    }

    #[test]
    fn levels_are_ordered() {
        assert!(QualitativeLevel::Low < QualitativeLevel::Medium);
        assert!(QualitativeLevel::Medium < QualitativeLevel::High);
    }

    #[test]
    fn scores_builtin_techniques_end_to_end() {
        use QualitativeLevel::{High, Low, Medium};

        let catalog = Catalog::builtin();
        let weights = AxisWeights::default();
        let sub = ScenarioContext::substitution();
        let score =
            |id: &str| score_technique(catalog.get(id).unwrap(), &weights, &sub);

        let expectations = [
            ("shap", (3.91, 3.30, 4.70), (High, Medium, High)),
            ("lime", (2.76, 4.40, 3.50), (Medium, High, High)),
            ("cf", (2.76, 5.00, 3.50), (Medium, High, High)),
            ("rule", (5.00, 2.86, 3.80), (High, Medium, High)),
            ("proto", (2.30, 5.00, 3.00), (Low, High, Medium)),
        ];
        for (id, adjusted, levels) in expectations {
            let coords = score(id);
            triple_eq(coords.adjusted(), adjusted);
            assert_eq!(
                (coords.levels().c, coords.levels().u, coords.levels().d),
                levels,
                "levels for {id}"
            );
        }
    }

    #[test]
    fn all_ones_vector_under_identity_scenario_is_all_low() {
        let ones = PropertyVector::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let technique = Technique::new(
            "ones",
            "Ones",
            "test",
            ["tabular"],
            ones,
            crate::catalog::LatencyProfile::online(10.0).unwrap(),
        )
        .unwrap();
        let coords = score_technique(&technique, &AxisWeights::default(), &identity_scenario());
        triple_eq(coords.adjusted(), (1.0, 1.0, 1.0));
        assert_eq!(coords.levels().c, QualitativeLevel::Low);
        assert_eq!(coords.levels().u, QualitativeLevel::Low);
        assert_eq!(coords.levels().d, QualitativeLevel::Low);
    }

    #[test]
    fn weights_must_be_convex() {
        assert!(ComplianceWeights::new(0.6, 0.4).is_ok());
        assert!(ComplianceWeights::new(0.7, 0.4).is_err());
        assert!(ComplianceWeights::new(-0.1, 1.1).is_err());
        assert!(DeveloperWeights::new(0.5, 0.4, 0.1).is_ok());
        assert!(DeveloperWeights::new(0.5, 0.4, 0.2).is_err());
        assert!(SelectionWeights::new(0.4, 0.4, 0.2).is_ok());
        assert!(SelectionWeights::new(0.5, 0.5, 0.5).is_err());
        assert!(SelectionWeights::new(1.0, 0.0, 0.0).is_ok());
    }

    #[test]
    fn substitution_preset_matches_published_constants() {
        let sub = ScenarioContext::substitution();
        assert_eq!(sub.name(), "substitution");
        assert_eq!(
            (sub.gamma_c(), sub.gamma_u(), sub.gamma_d()),
            (1.15, 1.10, 1.00)
        );
        assert_eq!(sub.latency_budget_ms(), 200.0);
        assert_eq!(sub.reserved_overhead_ms(), 100.0);
        assert_eq!(sub.fit_fraction(), 0.8);
        assert_eq!(sub.explanation_budget_ms(), 100.0);
        assert_eq!(sub.fit_threshold_ms(), 80.0);
        let w = sub.selection_weights();
        assert_eq!(
            (w.compliance(), w.user(), w.developer()),
            (0.4, 0.4, 0.2)
        );
    }

    #[test]
    fn scenario_bounds_are_enforced() {
        let sub = ScenarioContext::substitution;
        assert!(sub().with_fit_fraction(0.0).is_err());
        assert!(sub().with_fit_fraction(1.0).is_ok());
        assert!(sub().with_fit_fraction(1.01).is_err());
        assert!(sub().with_gamma_c(-0.5).is_err());
        assert!(sub().with_gamma_c(0.0).is_ok());
        assert!(sub().with_reserved_overhead_ms(200.0).is_err());
        assert!(sub().with_reserved_overhead_ms(199.0).is_ok());
        assert!(sub().with_latency_budget_ms(0.0).is_err());
        assert!(sub().with_name("").is_err());
    }

    const SCENARIO_DOC: &str = "\
name = \"stricter-compliance\"
gamma_c = 1.3
gamma_u = 1.0
gamma_d = 1.0
latency_budget_ms = 150
reserved_overhead_ms = 50
fit_fraction = 0.9

[selection_weights]
compliance = 0.5
user = 0.3
developer = 0.2
";

    #[test]
    fn scenario_file_without_axis_weights_uses_defaults() {
        let (ctx, weights) = scenario_from_toml(SCENARIO_DOC).unwrap();
        assert_eq!(ctx.name(), "stricter-compliance");
        assert_eq!(ctx.gamma_c(), 1.3);
        assert_eq!(ctx.latency_budget_ms(), 150.0);
        assert_eq!(ctx.fit_threshold_ms(), 90.0);
        assert_eq!(ctx.selection_weights().compliance(), 0.5);
        assert_eq!(weights, AxisWeights::default());
    }

    #[test]
    fn scenario_file_axis_weights_override_defaults() {
        let doc = format!(
            "{SCENARIO_DOC}
[axis_weights.compliance]
auditability = 0.7
traceability = 0.3

[axis_weights.user]
comprehensibility = 0.5
actionability = 0.5

[axis_weights.developer]
fidelity = 0.4
debuggability = 0.4
efficiency = 0.2
"
        );
        let (_, weights) = scenario_from_toml(&doc).unwrap();
        assert_eq!(weights.compliance().auditability(), 0.7);
        assert_eq!(weights.user().actionability(), 0.5);
        assert_eq!(weights.developer().efficiency(), 0.2);
    }

    #[test]
    fn scenario_file_errors_are_classified() {
        let syntax = SCENARIO_DOC.replace("fit_fraction = 0.9", "fit_fraction = ");
        assert!(matches!(
            scenario_from_toml(&syntax).unwrap_err(),
            Error::Parse { .. }
        ));

        let unknown = format!("{SCENARIO_DOC}unexpected = 1\n");
        assert!(matches!(
            scenario_from_toml(&unknown).unwrap_err(),
            Error::Parse { .. }
        ));

        let semantic = SCENARIO_DOC.replace("compliance = 0.5", "compliance = 0.6");
        assert!(matches!(
            scenario_from_toml(&semantic).unwrap_err(),
            Error::Validation { .. }
        ));
    }
}
