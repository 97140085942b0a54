//! Sensitivity sweeps: re-run the scoring, selection, and recommendation
//! pipeline while one scenario parameter moves over a grid, then quantify how
//! stable the rankings and the tier plan are.

use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::recommendation::{synthesize_tiers, TierPlan};
use crate::scoring::{AxisWeights, ScenarioContext, SelectionWeights};
use crate::selection::{evaluate_catalog, rank, RankKey, RoundingMode};

/// The scenario parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    GammaC,
    GammaU,
    GammaD,
    SelectionWeightC,
    SelectionWeightU,
    SelectionWeightD,
    FitFraction,
}

impl SweepParameter {
    /// Stable lowercase label used in reports and on the command line.
    pub fn label(&self) -> &'static str {
        match self {
            SweepParameter::GammaC => "gamma_c",
            SweepParameter::GammaU => "gamma_u",
            SweepParameter::GammaD => "gamma_d",
            SweepParameter::SelectionWeightC => "selection_weight_c",
            SweepParameter::SelectionWeightU => "selection_weight_u",
            SweepParameter::SelectionWeightD => "selection_weight_d",
            SweepParameter::FitFraction => "fit_fraction",
        }
    }
}

/// A validated sweep grid: `from` to `to` inclusive in increments of `step`,
/// with the final point clamped to `to` when the last increment overshoots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSpec {
    parameter: SweepParameter,
    from: f64,
    to: f64,
    step: f64,
}

impl SweepSpec {
    pub fn new(parameter: SweepParameter, from: f64, to: f64, step: f64) -> Result<Self> {
        if !from.is_finite() || !to.is_finite() || !step.is_finite() {
            return Err(Error::InvalidSweep {
                message: format!("bounds must be finite, got from={from} to={to} step={step}"),
            });
        }
        if from > to {
            return Err(Error::InvalidSweep {
                message: format!("`from` must not exceed `to`, got from={from} to={to}"),
            });
        }
        if step <= 0.0 {
            return Err(Error::InvalidSweep {
                message: format!("`step` must be positive, got {step}"),
            });
        }
        Ok(Self {
            parameter,
            from,
            to,
            step,
        })
    }

    pub fn parameter(&self) -> SweepParameter {
        self.parameter
    }

    pub fn from(&self) -> f64 {
        self.from
    }

    pub fn to(&self) -> f64 {
        self.to
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// The inclusive grid values, in ascending order.
    pub fn values(&self) -> Vec<f64> {
        let span = self.to - self.from;
        let steps = ((span / self.step) - 1e-9).ceil().max(0.0) as usize;
        let mut values: Vec<f64> = (0..=steps)
            .map(|i| self.from + (i as f64) * self.step)
            .collect();
        if let Some(last) = values.last_mut() {
            if *last > self.to {
                *last = self.to;
            }
        }
        values
    }
}

/// What happened at one grid value.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum GridOutcome {
    /// The pipeline ran; rankings are ids in rank order.
    Evaluated {
        ranking_by_ratio: Vec<String>,
        ranking_by_utility: Vec<String>,
        plan: TierPlan,
    },
    /// The parameter value violated a scenario invariant; the sweep went on.
    Invalid { message: String },
}

/// One grid value with its outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridPoint {
    pub value: f64,
    pub outcome: GridOutcome,
}

/// Result of a sweep: the grid, per-step rank stability, and the parameter
/// values at which the tier plan changed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub spec: SweepSpec,
    pub points: Vec<GridPoint>,
    /// Kendall tau-b between the ratio rankings of consecutive grid points;
    /// one entry per adjacent pair, `None` when either point was invalid or
    /// has fewer than two techniques.
    pub stability: Vec<Option<f64>>,
    /// Grid values whose tier assignments differ from the previous valid
    /// point's.
    pub change_points: Vec<f64>,
}

/// Runs the full pipeline at every grid value with only the swept parameter
/// changed. Values that violate scenario invariants become invalid points;
/// the sweep continues past them. Deterministic for fixed inputs.
pub fn sweep(
    catalog: &Catalog,
    weights: &AxisWeights,
    ctx: &ScenarioContext,
    mode: RoundingMode,
    spec: &SweepSpec,
) -> Result<SweepReport> {
    if catalog.is_empty() {
        return Err(Error::EmptyCatalog);
    }

    let mut points = Vec::new();
    for value in spec.values() {
        let outcome = match context_at(ctx, spec.parameter, value) {
            Ok(point_ctx) => {
                let evaluations = evaluate_catalog(catalog, weights, &point_ctx, mode)?;
                let ids = |key| -> Vec<String> {
                    rank(&evaluations, key)
                        .into_iter()
                        .map(|e| e.selection.technique_id)
                        .collect()
                };
                GridOutcome::Evaluated {
                    ranking_by_ratio: ids(RankKey::Ratio),
                    ranking_by_utility: ids(RankKey::Utility),
                    plan: synthesize_tiers(&evaluations)?,
                }
            }
            Err(err) => GridOutcome::Invalid {
                message: err.to_string(),
            },
        };
        points.push(GridPoint { value, outcome });
    }

    let stability = points
        .windows(2)
        .map(|pair| match (&pair[0].outcome, &pair[1].outcome) {
            (
                GridOutcome::Evaluated {
                    ranking_by_ratio: a, ..
                },
                GridOutcome::Evaluated {
                    ranking_by_ratio: b, ..
                },
            ) => rank_stability(a, b).ok(),
            _ => None,
        })
        .collect();

    let mut change_points = Vec::new();
    let mut last_assignments: Option<(Option<String>, Option<String>, Option<String>)> = None;
    for point in &points {
        if let GridOutcome::Evaluated { plan, .. } = &point.outcome {
            let assignments = owned_assignments(plan);
            if let Some(previous) = &last_assignments {
                if *previous != assignments {
                    change_points.push(point.value);
                }
            }
            last_assignments = Some(assignments);
        }
    }

    Ok(SweepReport {
        spec: *spec,
        points,
        stability,
        change_points,
    })
}

fn owned_assignments(plan: &TierPlan) -> (Option<String>, Option<String>, Option<String>) {
    let (a, b, c) = plan.assignments();
    (
        a.map(str::to_owned),
        b.map(str::to_owned),
        c.map(str::to_owned),
    )
}

fn context_at(
    ctx: &ScenarioContext,
    parameter: SweepParameter,
    value: f64,
) -> Result<ScenarioContext> {
    match parameter {
        SweepParameter::GammaC => ctx.clone().with_gamma_c(value),
        SweepParameter::GammaU => ctx.clone().with_gamma_u(value),
        SweepParameter::GammaD => ctx.clone().with_gamma_d(value),
        SweepParameter::FitFraction => ctx.clone().with_fit_fraction(value),
        SweepParameter::SelectionWeightC
        | SweepParameter::SelectionWeightU
        | SweepParameter::SelectionWeightD => {
            let rescaled = rescaled_weights(ctx.selection_weights(), parameter, value)?;
            Ok(ctx.clone().with_selection_weights(rescaled))
        }
    }
}

/// Sets one selection weight to `value` and rescales the other two
/// proportionally so the triple keeps summing to one.
fn rescaled_weights(
    current: SelectionWeights,
    parameter: SweepParameter,
    value: f64,
) -> Result<SelectionWeights> {
    let (held_field, others) = match parameter {
        SweepParameter::SelectionWeightC => {
            ("compliance", (current.user(), current.developer()))
        }
        SweepParameter::SelectionWeightU => {
            ("user", (current.compliance(), current.developer()))
        }
        SweepParameter::SelectionWeightD => {
            ("developer", (current.compliance(), current.user()))
        }
        _ => unreachable!("only selection-weight parameters are rescaled"),
    };

    let remaining = 1.0 - value;
    let other_sum = others.0 + others.1;
    let (a, b) = if other_sum > 0.0 {
        let scale = remaining / other_sum;
        (others.0 * scale, others.1 * scale)
    } else if remaining.abs() <= 1e-12 {
        (0.0, 0.0)
    } else {
        return Err(Error::validation(
            "selection weights",
            held_field,
            format!(
                "cannot rescale: the other two weights are both zero, so no \
                 proportional split reaches {value}"
            ),
        ));
    };

    match parameter {
        SweepParameter::SelectionWeightC => SelectionWeights::new(value, a, b),
        SweepParameter::SelectionWeightU => SelectionWeights::new(a, value, b),
        SweepParameter::SelectionWeightD => SelectionWeights::new(a, b, value),
        _ => unreachable!(),
    }
}

/// Kendall tau-b between two rankings given as ordered id lists. Both must be
/// permutations of the same ids with at least two entries.
pub fn rank_stability<S: AsRef<str>>(ranking_a: &[S], ranking_b: &[S]) -> Result<f64> {
    if ranking_a.len() != ranking_b.len() {
        return Err(Error::Ranking {
            message: format!(
                "rankings have different sizes: {} vs {}",
                ranking_a.len(),
                ranking_b.len()
            ),
        });
    }
    if ranking_a.len() < 2 {
        return Err(Error::Ranking {
            message: "rankings need at least two entries to correlate".to_owned(),
        });
    }

    let positions_b: std::collections::BTreeMap<&str, usize> = ranking_b
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_ref(), i))
        .collect();
    let mut xs = Vec::with_capacity(ranking_a.len());
    let mut ys = Vec::with_capacity(ranking_a.len());
    for (i, id) in ranking_a.iter().enumerate() {
        let j = positions_b.get(id.as_ref()).ok_or_else(|| Error::Ranking {
            message: format!("id `{}` appears in only one ranking", id.as_ref()),
        })?;
        xs.push(i as f64);
        ys.push(*j as f64);
    }
    if positions_b.len() != ranking_a.len() {
        return Err(Error::Ranking {
            message: "rankings are not permutations of the same id set".to_owned(),
        });
    }

    kendall_tau_b(&xs, &ys).ok_or_else(|| Error::Ranking {
        message: "correlation undefined: a ranking is entirely tied".to_owned(),
    })
}

/// Tie-aware Kendall rank correlation between two equal-length value
/// sequences: (C - D) / sqrt((n0 - tx)(n0 - ty)) over all index pairs, where
/// C and D count concordant and discordant pairs and tx, ty count pairs tied
/// in each sequence. `None` when either sequence is fully tied.
pub fn kendall_tau_b(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len(), "sequences must have equal length");
    let n = xs.len();
    if n < 2 {
        return None;
    }

    let mut concordant = 0_i64;
    let mut discordant = 0_i64;
    let mut ties_x = 0_i64;
    let mut ties_y = 0_i64;
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = xs[i] - xs[j];
            let dy = ys[i] - ys[j];
            if dx == 0.0 {
                ties_x += 1;
            }
            if dy == 0.0 {
                ties_y += 1;
            }
            if dx == 0.0 || dy == 0.0 {
                continue;
            }
            if (dx > 0.0) == (dy > 0.0) {
                concordant += 1;
            } else {
                discordant += 1;
            }
        }
    }

    let n0 = (n * (n - 1) / 2) as i64;
    let denominator = (((n0 - ties_x) as f64) * ((n0 - ties_y) as f64)).sqrt();
    if denominator == 0.0 {
        return None;
    }
    Some(((concordant - discordant) as f64) / denominator)
}
