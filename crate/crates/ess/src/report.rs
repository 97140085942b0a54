//! Rendering of runs and sweep reports as aligned text, CSV, or the machine
//! JSON document.
//!
//! Aligned text is meant for terminals: display names, glyph feasibility
//! marks, and space-padded columns. CSV swaps in technique ids and the words
//! `fits` / `marginal` / `infeasible` so downstream tooling never has to
//! parse glyphs. Machine output is the JSON document from
//! [`EngineRun::machine_json`]. All formats round half-up at render time
//! only; no locale-dependent formatting is used anywhere.

use std::fmt::Write as _;

use serde_json::Value;

use crate::catalog::Catalog;
use crate::pipeline::EngineRun;
use crate::recommendation::{TierCriterion, TierPick};
use crate::rounding::{format_1dp, format_2dp, format_rating};
use crate::sensitivity::{GridOutcome, SweepReport};

/// Output format for the rendering functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    /// Space-aligned table for terminals.
    #[default]
    AlignedText,
    /// Comma-separated values with a header row and `\n` line endings.
    Csv,
    /// The machine JSON document.
    Machine,
}

/// Adjusted coordinates and levels, one row per technique in catalog order.
pub fn render_scores(run: &EngineRun, format: OutputFormat) -> String {
    match format {
        OutputFormat::Machine => run.machine_json(),
        OutputFormat::AlignedText => align_table(
            &["technique", "C'", "level", "U'", "level", "D'", "level"],
            &score_rows(run, true),
        ),
        OutputFormat::Csv => csv_document(
            &[
                "technique",
                "c_adjusted",
                "c_level",
                "u_adjusted",
                "u_level",
                "d_adjusted",
                "d_level",
            ],
            &score_rows(run, false),
        ),
    }
}

fn score_rows(run: &EngineRun, aligned: bool) -> Vec<Vec<String>> {
    run.score_records()
        .into_iter()
        .map(|r| {
            let label = if aligned { r.name } else { r.technique_id };
            vec![
                label,
                format_2dp(r.adjusted.c),
                r.levels.c.to_string(),
                format_2dp(r.adjusted.u),
                r.levels.u.to_string(),
                format_2dp(r.adjusted.d),
                r.levels.d.to_string(),
            ]
        })
        .collect()
}

/// Utility, cost, efficiency ratio, and feasibility per technique.
pub fn render_selection(run: &EngineRun, format: OutputFormat) -> String {
    match format {
        OutputFormat::Machine => run.machine_json(),
        OutputFormat::AlignedText => align_table(
            &["technique", "utility", "cost", "ratio", "efficiency", "feasibility"],
            &selection_rows(run, true),
        ),
        OutputFormat::Csv => csv_document(
            &[
                "technique",
                "utility",
                "resource_cost",
                "efficiency_ratio",
                "efficiency",
                "feasibility",
                "on_pareto_frontier",
            ],
            &selection_rows(run, false),
        ),
    }
}

fn selection_rows(run: &EngineRun, aligned: bool) -> Vec<Vec<String>> {
    run.evaluations()
        .iter()
        .map(|e| {
            let label = if aligned {
                e.technique.name.clone()
            } else {
                e.technique.id.clone()
            };
            let feasibility = if aligned {
                e.selection.feasibility.glyph().to_string()
            } else {
                e.selection.feasibility.word().to_string()
            };
            let mut row = vec![
                label,
                format_2dp(e.selection.utility),
                format_2dp(e.selection.resource_cost),
                format_1dp(e.selection.efficiency_ratio),
                format_rating(e.technique.properties.efficiency()),
                feasibility,
            ];
            if !aligned {
                row.push(e.selection.on_pareto_frontier.to_string());
            }
            row
        })
        .collect()
}

/// The tier plan with per-tier justifications and any warnings.
pub fn render_plan(run: &EngineRun, format: OutputFormat) -> String {
    match format {
        OutputFormat::Machine => run.machine_json(),
        OutputFormat::AlignedText => {
            let plan = run.plan();
            let mut out = String::new();
            render_tier(&mut out, run.catalog(), "Tier 1 (always-on)", plan.tier1_always_on.as_ref());
            render_tier(&mut out, run.catalog(), "Tier 2 (selective)", plan.tier2_selective.as_ref());
            render_tier(&mut out, run.catalog(), "Tier 3 (periodic)", plan.tier3_periodic.as_ref());
            if !plan.warnings.is_empty() {
                out.push('\n');
                out.push_str("warnings:\n");
                for warning in &plan.warnings {
                    let _ = writeln!(out, "  - {warning}");
                }
            }
            out
        }
        OutputFormat::Csv => {
            let plan = run.plan();
            let tiers = [
                ("tier1_always_on", plan.tier1_always_on.as_ref()),
                ("tier2_selective", plan.tier2_selective.as_ref()),
                ("tier3_periodic", plan.tier3_periodic.as_ref()),
            ];
            let mut rows = Vec::new();
            for (tier, pick) in tiers {
                let row = match pick {
                    Some(p) => vec![
                        tier.to_string(),
                        p.technique_id.clone(),
                        p.criterion.label().to_string(),
                        evidence_string(p),
                        p.feasibility.word().to_string(),
                        p.justification.clone(),
                    ],
                    None => vec![
                        tier.to_string(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                    ],
                };
                rows.push(row);
            }
            for warning in &plan.warnings {
                rows.push(vec![
                    "warning".to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    warning.clone(),
                ]);
            }
            csv_document(
                &["tier", "technique", "criterion", "evidence", "feasibility", "justification"],
                &rows,
            )
        }
    }
}

fn render_tier(out: &mut String, catalog: &Catalog, title: &str, pick: Option<&TierPick>) {
    match pick {
        Some(pick) => {
            let name = catalog
                .get(&pick.technique_id)
                .map_or(pick.technique_id.as_str(), |t| t.name.as_str());
            let _ = writeln!(out, "{title}: {name} [{}]", pick.feasibility.word());
            let _ = writeln!(out, "  {}", pick.justification);
        }
        None => {
            let _ = writeln!(out, "{title}: none");
        }
    }
}

fn evidence_string(pick: &TierPick) -> String {
    match pick.criterion {
        TierCriterion::EfficiencyRatio => format_1dp(pick.evidence),
        TierCriterion::UserAxis | TierCriterion::ComplianceAxis => format_2dp(pick.evidence),
    }
}

/// The ordered provenance trail. Machine format is the trail alone, so two
/// identical runs produce byte-identical documents.
pub fn render_provenance(run: &EngineRun, format: OutputFormat) -> String {
    let trail = run.provenance();
    match format {
        OutputFormat::Machine => {
            let mut text = serde_json::to_string_pretty(trail).expect("trail serializes");
            text.push('\n');
            text
        }
        OutputFormat::AlignedText => {
            let mut out = String::new();
            for (i, record) in trail.records.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let _ = writeln!(out, "stage: {}", record.stage);
                let _ = writeln!(out, "  input_digest: {}", record.input_digest);
                if let Some(stamp) = &record.timestamp {
                    let _ = writeln!(out, "  timestamp: {stamp}");
                }
                let _ = writeln!(out, "  parameters: {}", compact(&record.parameters));
                let _ = writeln!(out, "  outputs: {}", compact(&record.outputs));
            }
            out
        }
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = trail
                .records
                .iter()
                .map(|r| {
                    vec![
                        r.stage.clone(),
                        r.input_digest.clone(),
                        compact(&r.parameters),
                        compact(&r.outputs),
                        r.timestamp.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            csv_document(&["stage", "input_digest", "parameters", "outputs", "timestamp"], &rows)
        }
    }
}

fn compact(value: &Value) -> String {
    serde_json::to_string(value).expect("value serializes")
}

/// Grid outcomes, rank stability, and change points for one sweep.
pub fn render_sweep(report: &SweepReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Machine => {
            let mut text = serde_json::to_string_pretty(report).expect("report serializes");
            text.push('\n');
            text
        }
        OutputFormat::AlignedText => {
            let spec = &report.spec;
            let mut out = String::new();
            let _ = writeln!(
                out,
                "sweep {} from {} to {} step {}",
                spec.parameter().label(),
                spec.from(),
                spec.to(),
                spec.step()
            );
            out.push('\n');
            out.push_str(&align_table(
                &["value", "status", "tier1", "tier2", "tier3", "stability", "ranking by ratio"],
                &sweep_rows(report, true),
            ));
            out.push('\n');
            if report.change_points.is_empty() {
                out.push_str("change points: none\n");
            } else {
                let list: Vec<String> = report.change_points.iter().map(|v| format_2dp(*v)).collect();
                let _ = writeln!(out, "change points: {}", list.join(", "));
            }
            out
        }
        OutputFormat::Csv => csv_document(
            &[
                "value",
                "status",
                "tier1",
                "tier2",
                "tier3",
                "stability_from_previous",
                "ranking_by_ratio",
                "ranking_by_utility",
                "note",
            ],
            &sweep_rows(report, false),
        ),
    }
}

fn sweep_rows(report: &SweepReport, aligned: bool) -> Vec<Vec<String>> {
    let blank = if aligned { "-" } else { "" };
    report
        .points
        .iter()
        .enumerate()
        .map(|(i, point)| {
            let stability = i
                .checked_sub(1)
                .and_then(|prev| report.stability.get(prev).copied().flatten());
            let stability = match stability {
                Some(tau) => format!("{tau:.3}"),
                None => blank.to_string(),
            };
            match &point.outcome {
                GridOutcome::Evaluated {
                    ranking_by_ratio,
                    ranking_by_utility,
                    plan,
                } => {
                    let (t1, t2, t3) = plan.assignments();
                    let mut row = vec![
                        format_2dp(point.value),
                        "evaluated".to_string(),
                        t1.unwrap_or(blank).to_string(),
                        t2.unwrap_or(blank).to_string(),
                        t3.unwrap_or(blank).to_string(),
                        stability,
                        ranking_by_ratio.join(" "),
                    ];
                    if !aligned {
                        row.push(ranking_by_utility.join(" "));
                        row.push(String::new());
                    }
                    row
                }
                GridOutcome::Invalid { message } => {
                    let mut row = vec![
                        format_2dp(point.value),
                        "invalid".to_string(),
                        blank.to_string(),
                        blank.to_string(),
                        blank.to_string(),
                        stability,
                        if aligned { message.clone() } else { String::new() },
                    ];
                    if !aligned {
                        row.push(String::new());
                        row.push(message.clone());
                    }
                    row
                }
            }
        })
        .collect()
}

/// The catalog as a TOML document; loading it back yields an equal catalog.
pub fn render_catalog(catalog: &Catalog) -> String {
    toml::to_string_pretty(catalog).expect("catalog serializes")
}

fn align_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    push_aligned_row(&mut out, &widths, headers.iter().copied());
    for row in rows {
        push_aligned_row(&mut out, &widths, row.iter().map(String::as_str));
    }
    out
}

fn push_aligned_row<'a>(out: &mut String, widths: &[usize], cells: impl Iterator<Item = &'a str>) {
    let mut line = String::new();
    for (i, cell) in cells.enumerate() {
        if i > 0 {
            line.push_str("  ");
        }
        line.push_str(cell);
        let pad = widths[i].saturating_sub(cell.chars().count());
        line.extend(std::iter::repeat(' ').take(pad));
    }
    out.push_str(line.trim_end());
    out.push('\n');
}

fn csv_document(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut writer = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::NonNumeric)
        .from_writer(Vec::new());
    writer.write_record(headers).expect("csv header");
    for row in rows {
        writer.write_record(row).expect("csv row");
    }
    let bytes = writer.into_inner().expect("csv buffer");
    String::from_utf8(bytes).expect("csv output is utf-8")
}
