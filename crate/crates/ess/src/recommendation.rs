//! Synthesis of the three-tier deployment plan from evaluated techniques:
//! an always-on workhorse, a selectively triggered complement, and a
//! periodic offline auditor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rounding::{format_1dp, format_2dp};
use crate::selection::{rank, FeasibilityClass, RankKey, TechniqueEvaluation};

/// The measure a tier maximises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TierCriterion {
    EfficiencyRatio,
    UserAxis,
    ComplianceAxis,
}

impl TierCriterion {
    /// Stable identifier used in rendered documents.
    pub fn label(&self) -> &'static str {
        match self {
            TierCriterion::EfficiencyRatio => "efficiency_ratio",
            TierCriterion::UserAxis => "user_axis",
            TierCriterion::ComplianceAxis => "compliance_axis",
        }
    }
}

/// One tier assignment with the numeric evidence that justified it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TierPick {
    pub technique_id: String,
    pub criterion: TierCriterion,
    /// Value of the criterion for the picked technique.
    pub evidence: f64,
    pub feasibility: FeasibilityClass,
    pub justification: String,
}

/// A three-tier deployment plan. Tiers that cannot be filled stay `None` and
/// leave an explanatory warning; a technique never occupies two tiers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TierPlan {
    pub tier1_always_on: Option<TierPick>,
    pub tier2_selective: Option<TierPick>,
    pub tier3_periodic: Option<TierPick>,
    pub warnings: Vec<String>,
}

impl TierPlan {
    /// The picked ids as a (tier 1, tier 2, tier 3) triple.
    pub fn assignments(&self) -> (Option<&str>, Option<&str>, Option<&str>) {
        (
            self.tier1_always_on.as_ref().map(|p| p.technique_id.as_str()),
            self.tier2_selective.as_ref().map(|p| p.technique_id.as_str()),
            self.tier3_periodic.as_ref().map(|p| p.technique_id.as_str()),
        )
    }
}

/// Builds the tier plan:
///
/// - Tier 1 takes the best efficiency ratio among techniques whose latency
///   fits comfortably.
/// - Tier 2 takes the best user-axis score among fitting or marginal
///   techniques not already picked.
/// - Tier 3 takes the best compliance-axis score among everything left;
///   latency is irrelevant for periodic offline use.
///
/// Ties break by utility, then id, matching `rank`. An empty input is an
/// error; anything else yields a plan, possibly with empty tiers and
/// warnings.
pub fn synthesize_tiers(evaluations: &[TechniqueEvaluation]) -> Result<TierPlan> {
    if evaluations.is_empty() {
        return Err(Error::EmptyCatalog);
    }

    let mut warnings = Vec::new();
    let mut taken: Vec<String> = Vec::new();

    let tier1 = best(
        evaluations,
        RankKey::Ratio,
        |e| e.selection.feasibility == FeasibilityClass::Fits,
        &taken,
    )
    .map(|e| {
        TierPick {
            technique_id: e.selection.technique_id.clone(),
            criterion: TierCriterion::EfficiencyRatio,
            evidence: e.selection.efficiency_ratio,
            feasibility: e.selection.feasibility,
            justification: format!(
                "highest efficiency ratio ({}) among techniques fitting the explanation budget",
                format_1dp(e.selection.efficiency_ratio)
            ),
        }
    });
    match &tier1 {
        Some(pick) => taken.push(pick.technique_id.clone()),
        None => warnings.push(
            "tier 1 left empty: no technique fits the explanation budget".to_owned(),
        ),
    }

    let tier2 = best(
        evaluations,
        RankKey::AxisU,
        |e| e.selection.feasibility >= FeasibilityClass::Marginal,
        &taken,
    )
    .map(|e| {
        TierPick {
            technique_id: e.selection.technique_id.clone(),
            criterion: TierCriterion::UserAxis,
            evidence: e.coordinates.adjusted().u,
            feasibility: e.selection.feasibility,
            justification: format!(
                "highest user-axis score ({}) among remaining latency-feasible techniques",
                format_2dp(e.coordinates.adjusted().u)
            ),
        }
    });
    match &tier2 {
        Some(pick) => {
            taken.push(pick.technique_id.clone());
            if pick.feasibility == FeasibilityClass::Marginal {
                warnings.push(format!(
                    "tier 2 technique `{}` fits the explanation budget only marginally; \
                     trigger it selectively rather than on every decision",
                    pick.technique_id
                ));
            }
        }
        None => warnings.push(
            "tier 2 left empty: no remaining technique is latency-feasible online".to_owned(),
        ),
    }

    let tier3 = best(evaluations, RankKey::AxisC, |_| true, &taken).map(|e| {
        TierPick {
            technique_id: e.selection.technique_id.clone(),
            criterion: TierCriterion::ComplianceAxis,
            evidence: e.coordinates.adjusted().c,
            feasibility: e.selection.feasibility,
            justification: format!(
                "highest compliance-axis score ({}) among remaining techniques; \
                 runs offline on a periodic schedule",
                format_2dp(e.coordinates.adjusted().c)
            ),
        }
    });
    if tier3.is_none() {
        warnings.push("tier 3 left empty: no techniques remain".to_owned());
    }

    Ok(TierPlan {
        tier1_always_on: tier1,
        tier2_selective: tier2,
        tier3_periodic: tier3,
        warnings,
    })
}

fn best<'a>(
    evaluations: &'a [TechniqueEvaluation],
    key: RankKey,
    eligible: impl Fn(&TechniqueEvaluation) -> bool,
    taken: &[String],
) -> Option<&'a TechniqueEvaluation> {
    let candidates: Vec<TechniqueEvaluation> = evaluations
        .iter()
        .filter(|e| eligible(e) && !taken.contains(&e.selection.technique_id))
        .cloned()
        .collect();
    let winner = rank(&candidates, key).into_iter().next()?;
    evaluations
        .iter()
        .find(|e| e.selection.technique_id == winner.selection.technique_id)
}
