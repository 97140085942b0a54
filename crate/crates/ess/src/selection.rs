//! Multi-objective evaluation of scored techniques: combined utility,
//! resource cost, efficiency ratios, latency feasibility gating, rankings,
//! and the Pareto frontier over adjusted coordinates.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, LatencyMode, LatencyProfile, Technique};
use crate::error::{Error, Result};
use crate::rounding::round_half_up;
use crate::scoring::{score_technique, AxisTriple, AxisWeights, EssCoordinates, ScenarioContext, SelectionWeights};

/// How comfortably a technique sits inside the scenario's explanation budget.
///
/// Ordered so that `Fits > Marginal > InfeasibleOnline`, which lets gating
/// code compare classes directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FeasibilityClass {
    #[serde(rename = "infeasible")]
    InfeasibleOnline,
    #[serde(rename = "marginal")]
    Marginal,
    #[serde(rename = "fits")]
    Fits,
}

impl FeasibilityClass {
    /// Single-character mark used in aligned tables.
    pub fn glyph(&self) -> &'static str {
        match self {
            FeasibilityClass::Fits => "\u{2713}",
            FeasibilityClass::Marginal => "\u{2248}",
            FeasibilityClass::InfeasibleOnline => "\u{00d7}",
        }
    }

    /// Lowercase word used in delimited and machine outputs.
    pub fn word(&self) -> &'static str {
        match self {
            FeasibilityClass::Fits => "fits",
            FeasibilityClass::Marginal => "marginal",
            FeasibilityClass::InfeasibleOnline => "infeasible",
        }
    }
}

impl fmt::Display for FeasibilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.word())
    }
}

/// How efficiency ratios are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoundingMode {
    /// Divide at full `f64` precision. The default for analysis.
    #[default]
    FullPrecision,
    /// Round utility and cost to two decimals half-up first, divide, then
    /// round the ratio to one decimal. Reproduces tables computed by hand
    /// from the displayed two-decimal values.
    DisplayRounded,
}

/// Per-technique outcome of the multi-objective evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    pub technique_id: String,
    /// Weighted combination of the adjusted axis scores.
    pub utility: f64,
    /// Reciprocal of the efficiency rating; within [0.2, 1.0] on the 1-5 scale.
    pub resource_cost: f64,
    /// Utility per unit of resource cost, under the chosen rounding mode.
    pub efficiency_ratio: f64,
    pub feasibility: FeasibilityClass,
    pub on_pareto_frontier: bool,
}

/// A technique joined with its coordinates and selection outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct TechniqueEvaluation {
    pub technique: Technique,
    pub coordinates: EssCoordinates,
    pub selection: SelectionResult,
}

/// Key for ordering evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankKey {
    Utility,
    Ratio,
    AxisC,
    AxisU,
    AxisD,
}

/// Combined utility of an adjusted triple: a convex combination of the three
/// axis scores, so the result lies between the smallest and largest component.
pub fn utility(adjusted: AxisTriple, weights: SelectionWeights) -> f64 {
    weights.compliance() * adjusted.c + weights.user() * adjusted.u + weights.developer() * adjusted.d
}

/// Resource cost proxy: the reciprocal of the efficiency rating. Ratings are
/// at least 1, so this never divides by zero.
pub fn resource_cost(efficiency: f64) -> f64 {
    1.0 / efficiency
}

/// Utility per unit cost under the given rounding mode.
pub fn efficiency_ratio(utility: f64, cost: f64, mode: RoundingMode) -> f64 {
    match mode {
        RoundingMode::FullPrecision => utility / cost,
        RoundingMode::DisplayRounded => {
            round_half_up(round_half_up(utility, 2) / round_half_up(cost, 2), 1)
        }
    }
}

/// Gates a latency profile against the scenario's explanation budget.
///
/// Offline-only techniques are infeasible online by definition. Online
/// estimates at or below `fit_fraction` of the explanation budget fit
/// comfortably; estimates within the budget are marginal; anything beyond is
/// infeasible. Both thresholds are inclusive.
pub fn classify_latency(latency: &LatencyProfile, ctx: &ScenarioContext) -> FeasibilityClass {
    match latency.mode() {
        LatencyMode::OfflineOnly => FeasibilityClass::InfeasibleOnline,
        LatencyMode::Online => {
            let estimate = latency
                .estimate_ms()
                .expect("online latency profiles carry an estimate");
            if estimate <= ctx.fit_threshold_ms() {
                FeasibilityClass::Fits
            } else if estimate <= ctx.explanation_budget_ms() {
                FeasibilityClass::Marginal
            } else {
                FeasibilityClass::InfeasibleOnline
            }
        }
    }
}

fn dominates(a: AxisTriple, b: AxisTriple) -> bool {
    a.c >= b.c && a.u >= b.u && a.d >= b.d && (a.c > b.c || a.u > b.u || a.d > b.d)
}

/// Ids of the techniques not weakly dominated (with a strict improvement)
/// by any other, maximising all three adjusted axes. Identical triples are
/// mutually non-dominating, so both stay on the frontier.
pub fn pareto_frontier<S: AsRef<str>>(
    coordinates: &[(S, AxisTriple)],
) -> Result<BTreeSet<String>> {
    if coordinates.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let mut seen = BTreeSet::new();
    for (id, _) in coordinates {
        if !seen.insert(id.as_ref()) {
            return Err(Error::validation(
                format!("technique `{}`", id.as_ref()),
                "id",
                "duplicate id in frontier input",
            ));
        }
    }
    Ok(coordinates
        .iter()
        .filter(|(id, triple)| {
            !coordinates
                .iter()
                .any(|(other, other_triple)| {
                    other.as_ref() != id.as_ref() && dominates(*other_triple, *triple)
                })
        })
        .map(|(id, _)| id.as_ref().to_owned())
        .collect())
}

/// Scores and gates every technique in the catalog, marking frontier
/// membership. Fails on an empty catalog.
pub fn evaluate_catalog(
    catalog: &Catalog,
    weights: &AxisWeights,
    ctx: &ScenarioContext,
    mode: RoundingMode,
) -> Result<Vec<TechniqueEvaluation>> {
    if catalog.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let scored: Vec<(String, EssCoordinates)> = catalog
        .techniques()
        .iter()
        .map(|t| (t.id.clone(), score_technique(t, weights, ctx)))
        .collect();
    let frontier_input: Vec<(&str, AxisTriple)> = scored
        .iter()
        .map(|(id, coords)| (id.as_str(), coords.adjusted()))
        .collect();
    let frontier = pareto_frontier(&frontier_input)?;

    Ok(catalog
        .techniques()
        .iter()
        .zip(scored)
        .map(|(technique, (id, coordinates))| {
            let u = utility(coordinates.adjusted(), ctx.selection_weights());
            let cost = resource_cost(technique.properties.efficiency());
            TechniqueEvaluation {
                selection: SelectionResult {
                    utility: u,
                    resource_cost: cost,
                    efficiency_ratio: efficiency_ratio(u, cost, mode),
                    feasibility: classify_latency(&technique.latency, ctx),
                    on_pareto_frontier: frontier.contains(&id),
                    technique_id: id,
                },
                technique: technique.clone(),
                coordinates,
            }
        })
        .collect())
}

fn key_value(evaluation: &TechniqueEvaluation, key: RankKey) -> f64 {
    match key {
        RankKey::Utility => evaluation.selection.utility,
        RankKey::Ratio => evaluation.selection.efficiency_ratio,
        RankKey::AxisC => evaluation.coordinates.adjusted().c,
        RankKey::AxisU => evaluation.coordinates.adjusted().u,
        RankKey::AxisD => evaluation.coordinates.adjusted().d,
    }
}

pub(crate) fn rank_ordering(
    a: (f64, f64, &str),
    b: (f64, f64, &str),
) -> Ordering {
    b.0.total_cmp(&a.0)
        .then(b.1.total_cmp(&a.1))
        .then(a.2.cmp(b.2))
}

/// Orders evaluations descending by the key; ties break by utility
/// descending, then id ascending. Deterministic for any input.
pub fn rank(evaluations: &[TechniqueEvaluation], key: RankKey) -> Vec<TechniqueEvaluation> {
    let mut ranked = evaluations.to_vec();
    ranked.sort_by(|a, b| {
        rank_ordering(
            (key_value(a, key), a.selection.utility, &a.selection.technique_id),
            (key_value(b, key), b.selection.utility, &b.selection.technique_id),
        )
    });
    ranked
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;
    use crate::catalog::PropertyVector;

    fn substitution_evaluations(mode: RoundingMode) -> Vec<TechniqueEvaluation> {
        evaluate_catalog(
            &Catalog::builtin(),
            &AxisWeights::default(),
            &ScenarioContext::substitution(),
            mode,
        )
        .unwrap()
    }

    fn by_id<'a>(
        evaluations: &'a [TechniqueEvaluation],
        id: &str,
    ) -> &'a TechniqueEvaluation {
        evaluations
            .iter()
            .find(|e| e.selection.technique_id == id)
            .unwrap()
    }

    #[test]
    fn utilities_match_published_table() {
        let evaluations = substitution_evaluations(RoundingMode::FullPrecision);
        let expected = [
            ("shap", 3.824),
            ("lime", 3.564),
            ("cf", 3.804),
            ("rule", 3.904),
            ("proto", 3.52),
        ];
        for (id, utility) in expected {
            assert_abs_diff_eq!(
                by_id(&evaluations, id).selection.utility,
                utility,
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn resource_costs_are_reciprocal_efficiency() {
        assert_eq!(resource_cost(4.0), 0.25);
        assert_eq!(resource_cost(1.0), 1.0);
        assert_eq!(resource_cost(2.0), 0.5);

        let evaluations = substitution_evaluations(RoundingMode::FullPrecision);
        assert_eq!(by_id(&evaluations, "shap").selection.resource_cost, 0.25);
        assert_eq!(by_id(&evaluations, "rule").selection.resource_cost, 0.5);
        assert_abs_diff_eq!(
            by_id(&evaluations, "lime").selection.resource_cost,
            1.0 / 3.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn display_rounded_ratios_match_published_table() {
        let evaluations = substitution_evaluations(RoundingMode::DisplayRounded);
        let expected = [
            ("shap", 15.3),
            ("lime", 10.8),
            ("cf", 11.5),
            ("rule", 7.8),
            ("proto", 10.7),
        ];
        for (id, ratio) in expected {
            assert_abs_diff_eq!(
                by_id(&evaluations, id).selection.efficiency_ratio,
                ratio,
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn full_precision_ratios_differ_from_display_rounded() {
        let evaluations = substitution_evaluations(RoundingMode::FullPrecision);
        let expected = [
            ("shap", 15.296),
            ("lime", 10.692),
            ("cf", 11.412),
            ("rule", 7.808),
            ("proto", 10.56),
        ];
        for (id, ratio) in expected {
            assert_abs_diff_eq!(
                by_id(&evaluations, id).selection.efficiency_ratio,
                ratio,
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn both_rounding_modes_stay_within_015_on_builtin_catalog() {
        let full = substitution_evaluations(RoundingMode::FullPrecision);
        let rounded = substitution_evaluations(RoundingMode::DisplayRounded);
        for (f, r) in full.iter().zip(&rounded) {
            let diff = (f.selection.efficiency_ratio - r.selection.efficiency_ratio).abs();
            assert!(
                diff <= 0.15,
                "{}: {} vs {}",
                f.selection.technique_id,
                f.selection.efficiency_ratio,
                r.selection.efficiency_ratio
            );
        }
    }

    #[test]
    fn latency_classes_match_published_marks() {
        let ctx = ScenarioContext::substitution();
        let catalog = Catalog::builtin();
        let class = |id: &str| classify_latency(&catalog.get(id).unwrap().latency, &ctx);

        assert_eq!(class("shap"), FeasibilityClass::Fits);
        // 80 ms sits exactly on the fit threshold; inclusive, so it fits
        assert_eq!(class("lime"), FeasibilityClass::Fits);
        assert_eq!(class("proto"), FeasibilityClass::Fits);
        // 100 ms sits exactly on the explanation budget; marginal, not out
        assert_eq!(class("cf"), FeasibilityClass::Marginal);
        assert_eq!(class("rule"), FeasibilityClass::InfeasibleOnline);

        let over = LatencyProfile::online(100.1).unwrap();
        assert_eq!(
            classify_latency(&over, &ctx),
            FeasibilityClass::InfeasibleOnline
        );
    }

    #[test]
    fn feasibility_classes_are_ordered_for_gating() {
        assert!(FeasibilityClass::Fits > FeasibilityClass::Marginal);
        assert!(FeasibilityClass::Marginal > FeasibilityClass::InfeasibleOnline);
    }

    #[test]
    fn frontier_on_builtin_catalog_is_shap_cf_rule() {
        let evaluations = substitution_evaluations(RoundingMode::FullPrecision);
        let on_frontier: Vec<&str> = evaluations
            .iter()
            .filter(|e| e.selection.on_pareto_frontier)
            .map(|e| e.selection.technique_id.as_str())
            .collect();
        assert_eq!(on_frontier, ["shap", "cf", "rule"]);
    }

    #[test]
    fn frontier_handles_degenerate_inputs() {
        let single = [("only", AxisTriple::new(2.0, 2.0, 2.0))];
        assert_eq!(
            pareto_frontier(&single).unwrap().into_iter().collect::<Vec<_>>(),
            ["only"]
        );

        let twins = [
            ("a", AxisTriple::new(3.0, 3.0, 3.0)),
            ("b", AxisTriple::new(3.0, 3.0, 3.0)),
        ];
        assert_eq!(pareto_frontier(&twins).unwrap().len(), 2);

        let empty: [(&str, AxisTriple); 0] = [];
        assert!(matches!(
            pareto_frontier(&empty).unwrap_err(),
            Error::EmptyCatalog
        ));

        let dup = [
            ("a", AxisTriple::new(3.0, 3.0, 3.0)),
            ("a", AxisTriple::new(2.0, 2.0, 2.0)),
        ];
        assert!(pareto_frontier(&dup).is_err());
    }

    #[test]
    fn axis_maximal_techniques_sit_on_the_frontier() {
        let evaluations = substitution_evaluations(RoundingMode::FullPrecision);
        // rule maximises C', cf ties the U' maximum, shap maximises D'
        for id in ["rule", "cf", "shap"] {
            assert!(by_id(&evaluations, id).selection.on_pareto_frontier, "{id}");
        }
    }

    #[test]
    fn ranking_by_ratio_is_stable_across_modes() {
        for mode in [RoundingMode::FullPrecision, RoundingMode::DisplayRounded] {
            let ranked = rank(&substitution_evaluations(mode), RankKey::Ratio);
            let ids: Vec<&str> = ranked
                .iter()
                .map(|e| e.selection.technique_id.as_str())
                .collect();
            assert_eq!(ids, ["shap", "cf", "lime", "proto", "rule"], "{mode:?}");
        }
    }

    #[test]
    fn ranking_by_utility_puts_rule_first() {
        let ranked = rank(
            &substitution_evaluations(RoundingMode::FullPrecision),
            RankKey::Utility,
        );
        let ids: Vec<&str> = ranked
            .iter()
            .map(|e| e.selection.technique_id.as_str())
            .collect();
        assert_eq!(ids, ["rule", "shap", "cf", "lime", "proto"]);
    }

    #[test]
    fn ranking_by_user_axis_breaks_the_tie_by_utility() {
        let ranked = rank(
            &substitution_evaluations(RoundingMode::FullPrecision),
            RankKey::AxisU,
        );
        let ids: Vec<&str> = ranked
            .iter()
            .map(|e| e.selection.technique_id.as_str())
            .collect();
        // cf and proto both reach U' = 5.00; cf wins on utility
        assert_eq!(ids, ["cf", "proto", "lime", "shap", "rule"]);
    }

    #[test]
    fn full_ties_fall_back_to_id_order() {
        let make = |id: &str| {
            let technique = Technique::new(
                id,
                id.to_uppercase(),
                "family",
                ["tabular"],
                PropertyVector::new(3.0, 3.0, 3.0, 3.0, 3.0, 3.0, 3.0).unwrap(),
                LatencyProfile::online(10.0).unwrap(),
            )
            .unwrap();
            Catalog::new(vec![technique]).unwrap()
        };
        let ctx = ScenarioContext::substitution();
        let weights = AxisWeights::default();
        let mut evaluations =
            evaluate_catalog(&make("b"), &weights, &ctx, RoundingMode::FullPrecision).unwrap();
        evaluations.extend(evaluate_catalog(
            &make("a"),
            &weights,
            &ctx,
            RoundingMode::FullPrecision,
        ).unwrap());

        let ranked = rank(&evaluations, RankKey::Utility);
        let ids: Vec<&str> = ranked
            .iter()
            .map(|e| e.selection.technique_id.as_str())
            .collect();
        assert_eq!(ids, ["a", "b"]);
    }

    #[test]
    fn empty_catalog_cannot_be_evaluated() {
        let empty = Catalog::new(vec![]).unwrap();
        assert!(matches!(
            evaluate_catalog(
                &empty,
                &AxisWeights::default(),
                &ScenarioContext::substitution(),
                RoundingMode::FullPrecision,
            )
            .unwrap_err(),
            Error::EmptyCatalog
        ));
    }

    #[test]
    fn utility_of_uniform_triple_is_that_value() {
        let weights = SelectionWeights::new(0.4, 0.4, 0.2).unwrap();
        assert_abs_diff_eq!(
            utility(AxisTriple::new(5.0, 5.0, 5.0), weights),
            5.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn feasibility_words_and_glyphs() {
        assert_eq!(FeasibilityClass::Fits.word(), "fits");
        assert_eq!(FeasibilityClass::Marginal.word(), "marginal");
        assert_eq!(FeasibilityClass::InfeasibleOnline.word(), "infeasible");
        assert_eq!(FeasibilityClass::Fits.glyph(), "✓");
        assert_eq!(FeasibilityClass::Marginal.glyph(), "≈");
        assert_eq!(FeasibilityClass::InfeasibleOnline.glyph(), "×");
    }
}
