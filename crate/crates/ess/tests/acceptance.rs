//! Acceptance gate: one test per release criterion, each printing a single
//! pass line when it holds. Random checks use seeded generators so the gate
//! is reproducible.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use ess::rounding::{format_1dp, format_2dp, format_rating};
use ess::{
    aggregate_axes, apply_context, classify_latency, discretise, evaluate_catalog,
    pareto_frontier, sweep, synthesize_tiers, AxisTriple, AxisWeights, Catalog,
    ComplianceWeights, DeveloperWeights, FeasibilityClass, GridOutcome, LatencyProfile,
    PropertyVector, QualitativeLevel, RoundingMode, ScenarioContext, SweepParameter, SweepSpec,
    UserWeights,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn builtin_evaluations(rounding: RoundingMode) -> Vec<ess::TechniqueEvaluation> {
    evaluate_catalog(
        &Catalog::builtin(),
        &AxisWeights::default(),
        &ScenarioContext::substitution(),
        rounding,
    )
    .unwrap()
}

#[test]
fn criterion_1_adjusted_coordinates_and_levels() {
    let started = Instant::now();
    let evaluations = builtin_evaluations(RoundingMode::default());
    let expected = [
        ("shap", (3.91, 3.30, 4.70), ("High", "Medium", "High")),
        ("lime", (2.76, 4.40, 3.50), ("Medium", "High", "High")),
        ("cf", (2.76, 5.00, 3.50), ("Medium", "High", "High")),
        ("rule", (5.00, 2.86, 3.80), ("High", "Medium", "High")),
        ("proto", (2.30, 5.00, 3.00), ("Low", "High", "Medium")),
    ];
    assert_eq!(evaluations.len(), expected.len());
    for (evaluation, (id, coords, levels)) in evaluations.iter().zip(expected) {
        assert_eq!(evaluation.technique.id, id);
        let adjusted = evaluation.coordinates.adjusted();
        assert!((adjusted.c - coords.0).abs() < 1e-9, "{id} C'");
        assert!((adjusted.u - coords.1).abs() < 1e-9, "{id} U'");
        assert!((adjusted.d - coords.2).abs() < 1e-9, "{id} D'");
        assert_eq!(format_2dp(adjusted.c), format!("{:.2}", coords.0), "{id} C' display");
        assert_eq!(format_2dp(adjusted.u), format!("{:.2}", coords.1), "{id} U' display");
        assert_eq!(format_2dp(adjusted.d), format!("{:.2}", coords.2), "{id} D' display");
        let bands = evaluation.coordinates.levels();
        assert_eq!(bands.c.to_string(), levels.0, "{id} C level");
        assert_eq!(bands.u.to_string(), levels.1, "{id} U level");
        assert_eq!(bands.d.to_string(), levels.2, "{id} D level");
    }
    assert!(started.elapsed().as_secs_f64() < 1.0, "scoring must finish within a second");
    println!("criterion 1 (adjusted coordinates, 15 level cells, under 1 s): pass");
}

#[test]
fn criterion_2_selection_table_cells() {
    let evaluations = builtin_evaluations(RoundingMode::DisplayRounded);
    let expected = [
        ("shap", "3.82", "0.25", "15.3", "4", "\u{2713}"),
        ("lime", "3.56", "0.33", "10.8", "3", "\u{2713}"),
        ("cf", "3.80", "0.33", "11.5", "3", "\u{2248}"),
        ("rule", "3.90", "0.50", "7.8", "2", "\u{00d7}"),
        ("proto", "3.52", "0.33", "10.7", "3", "\u{2713}"),
    ];
    for (evaluation, (id, utility, cost, ratio, efficiency, mark)) in
        evaluations.iter().zip(expected)
    {
        assert_eq!(evaluation.technique.id, id);
        assert_eq!(format_2dp(evaluation.selection.utility), utility, "{id} utility");
        assert_eq!(format_2dp(evaluation.selection.resource_cost), cost, "{id} cost");
        assert_eq!(format_1dp(evaluation.selection.efficiency_ratio), ratio, "{id} ratio");
        assert_eq!(
            format_rating(evaluation.technique.properties.efficiency()),
            efficiency,
            "{id} efficiency score"
        );
        assert_eq!(evaluation.selection.feasibility.glyph(), mark, "{id} feasibility");
    }

    let full = builtin_evaluations(RoundingMode::FullPrecision);
    let lime = full.iter().find(|e| e.technique.id == "lime").unwrap();
    assert!((lime.selection.efficiency_ratio - 10.692).abs() <= 1e-3);
    println!("criterion 2 (selection table, 25 cells, rounding divergence): pass");
}

#[test]
fn criterion_3_tier_plan() {
    let evaluations = builtin_evaluations(RoundingMode::default());
    let plan = synthesize_tiers(&evaluations).unwrap();
    assert_eq!(plan.assignments(), (Some("shap"), Some("cf"), Some("rule")));

    // The user-axis tie behind tier 2: counterfactuals and prototypes both
    // reach 5.00, and the higher utility wins.
    let cf = evaluations.iter().find(|e| e.technique.id == "cf").unwrap();
    let proto = evaluations.iter().find(|e| e.technique.id == "proto").unwrap();
    assert!((cf.coordinates.adjusted().u - proto.coordinates.adjusted().u).abs() < 1e-9);
    assert!(cf.selection.utility > proto.selection.utility);
    println!("criterion 3 (three-tier plan with utility tie-break): pass");
}

fn oracle_frontier(points: &[(String, AxisTriple)]) -> BTreeSet<String> {
    points
        .iter()
        .filter(|(_, p)| {
            !points.iter().any(|(_, q)| {
                q.c >= p.c
                    && q.u >= p.u
                    && q.d >= p.d
                    && (q.c > p.c || q.u > p.u || q.d > p.d)
            })
        })
        .map(|(id, _)| id.clone())
        .collect()
}

fn random_vector(rng: &mut ChaCha8Rng) -> PropertyVector {
    PropertyVector::new(
        rng.random_range(1.0..=5.0),
        rng.random_range(1.0..=5.0),
        rng.random_range(1.0..=5.0),
        rng.random_range(1.0..=5.0),
        rng.random_range(1.0..=5.0),
        rng.random_range(1.0..=5.0),
        rng.random_range(1.0..=5.0),
    )
    .unwrap()
}

#[test]
fn criterion_4_pareto_frontier_oracle() {
    let evaluations = builtin_evaluations(RoundingMode::default());
    let points: Vec<(String, AxisTriple)> = evaluations
        .iter()
        .map(|e| (e.technique.id.clone(), e.coordinates.adjusted()))
        .collect();
    let frontier = pareto_frontier(&points).unwrap();
    let expected: BTreeSet<String> =
        ["shap", "cf", "rule"].into_iter().map(String::from).collect();
    assert_eq!(frontier, expected);

    let weights = AxisWeights::default();
    let context = ScenarioContext::substitution();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e55);
    for _ in 0..1000 {
        let n = rng.random_range(1..=50);
        let points: Vec<(String, AxisTriple)> = (0..n)
            .map(|i| {
                let adjusted =
                    apply_context(aggregate_axes(&random_vector(&mut rng), &weights), &context);
                (format!("t{i}"), adjusted)
            })
            .collect();
        assert_eq!(pareto_frontier(&points).unwrap(), oracle_frontier(&points));
    }
    println!("criterion 4 (frontier matches brute-force oracle on 1000 random catalogs): pass");
}

fn random_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let w = rng.random_range(0.0..=1.0);
    (w, 1.0 - w)
}

fn random_weights(rng: &mut ChaCha8Rng) -> AxisWeights {
    let (aud, tra) = random_pair(rng);
    let (com, act) = random_pair(rng);
    let (a, b) = (rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0));
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    AxisWeights::new(
        ComplianceWeights::new(aud, tra).unwrap(),
        UserWeights::new(com, act).unwrap(),
        DeveloperWeights::new(lo, hi - lo, 1.0 - hi).unwrap(),
    )
}

fn vector_values(v: &PropertyVector) -> [f64; 7] {
    [
        v.auditability(),
        v.traceability(),
        v.comprehensibility(),
        v.actionability(),
        v.fidelity(),
        v.debuggability(),
        v.efficiency(),
    ]
}

#[test]
fn criterion_5_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);

    // Aggregation monotonicity: raising one rating never lowers any axis.
    for _ in 0..1000 {
        let vector = random_vector(&mut rng);
        let weights = random_weights(&mut rng);
        let mut values = vector_values(&vector);
        let index = rng.random_range(0..7);
        values[index] = (values[index] + rng.random_range(0.0..=4.0)).min(5.0);
        let raised = PropertyVector::new(
            values[0], values[1], values[2], values[3], values[4], values[5], values[6],
        )
        .unwrap();
        let before = aggregate_axes(&vector, &weights);
        let after = aggregate_axes(&raised, &weights);
        assert!(after.c >= before.c - 1e-12);
        assert!(after.u >= before.u - 1e-12);
        assert!(after.d >= before.d - 1e-12);
    }

    // Clip bounds: adjusted scores stay inside the rating range.
    for _ in 0..1000 {
        let raw = aggregate_axes(&random_vector(&mut rng), &random_weights(&mut rng));
        let ctx = ScenarioContext::substitution()
            .with_gamma_c(rng.random_range(0.0..=3.0))
            .and_then(|c| c.with_gamma_u(rng.random_range(0.0..=3.0)))
            .and_then(|c| c.with_gamma_d(rng.random_range(0.0..=3.0)))
            .unwrap();
        let adjusted = apply_context(raw, &ctx);
        for value in [adjusted.c, adjusted.u, adjusted.d] {
            assert!((1.0..=5.0).contains(&value));
        }
    }

    // Identity multipliers change nothing.
    let identity = ScenarioContext::substitution()
        .with_gamma_c(1.0)
        .and_then(|c| c.with_gamma_u(1.0))
        .and_then(|c| c.with_gamma_d(1.0))
        .unwrap();
    for _ in 0..1000 {
        let raw = aggregate_axes(&random_vector(&mut rng), &random_weights(&mut rng));
        assert_eq!(apply_context(raw, &identity), raw);
    }

    // Weight sums away from one are rejected.
    let mut rejected = 0;
    while rejected < 1000 {
        let (a, b): (f64, f64) = (rng.random_range(0.0..=1.5), rng.random_range(0.0..=1.5));
        if (a + b - 1.0).abs() <= 1e-6 {
            continue;
        }
        assert!(ComplianceWeights::new(a, b).is_err());
        rejected += 1;
    }

    // Discretisation partitions the rating range.
    for _ in 0..1000 {
        let x = rng.random_range(1.0..=5.0);
        let level = discretise(x);
        assert_eq!(level == QualitativeLevel::Low, x < 2.5);
        assert_eq!(level == QualitativeLevel::Medium, (2.5..3.5).contains(&x));
        assert_eq!(level == QualitativeLevel::High, x >= 3.5);
    }

    // Latency class never improves as the estimate grows.
    for _ in 0..1000 {
        let ctx = ScenarioContext::substitution()
            .with_latency_budget_ms(rng.random_range(101.0..=400.0))
            .and_then(|c| c.with_fit_fraction(rng.random_range(0.05..=1.0)))
            .unwrap();
        let lo = rng.random_range(0.0..=300.0);
        let hi = lo + rng.random_range(0.0..=300.0);
        let near = classify_latency(&LatencyProfile::online(lo).unwrap(), &ctx);
        let far = classify_latency(&LatencyProfile::online(hi).unwrap(), &ctx);
        assert!(near >= far);
        assert_eq!(
            classify_latency(&LatencyProfile::offline_only(), &ctx),
            FeasibilityClass::InfeasibleOnline
        );
    }

    println!("criterion 5 (six properties, 1000 random inputs each, zero failures): pass");
}

fn tau_b(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len();
    let (mut concordant, mut discordant, mut tx, mut ty) = (0f64, 0f64, 0f64, 0f64);
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = xs[i] - xs[j];
            let dy = ys[i] - ys[j];
            if dx == 0.0 && dy == 0.0 {
                tx += 1.0;
                ty += 1.0;
            } else if dx == 0.0 {
                tx += 1.0;
            } else if dy == 0.0 {
                ty += 1.0;
            } else if dx * dy > 0.0 {
                concordant += 1.0;
            } else {
                discordant += 1.0;
            }
        }
    }
    let pairs = (n * (n - 1)) as f64 / 2.0;
    (concordant - discordant) / ((pairs - tx).sqrt() * (pairs - ty).sqrt())
}

#[test]
fn criterion_6_multiplier_sweep_stability() {
    let catalog = Catalog::builtin();
    let weights = AxisWeights::default();
    let context = ScenarioContext::substitution();

    let spec = SweepSpec::new(SweepParameter::GammaC, 1.0, 1.3, 0.05).unwrap();
    let report = sweep(&catalog, &weights, &context, RoundingMode::default(), &spec).unwrap();
    assert_eq!(report.points.len(), 7);
    for point in &report.points {
        let GridOutcome::Evaluated { plan, .. } = &point.outcome else {
            panic!("grid point {} not evaluated", point.value);
        };
        assert_eq!(plan.assignments(), (Some("shap"), Some("cf"), Some("rule")));
    }
    assert!(report.stability.iter().all(|tau| *tau == Some(1.0)));
    assert!(report.change_points.is_empty());

    // Independent brute-force re-evaluation of every grid point.
    let mut previous: Option<Vec<String>> = None;
    for i in 0..7 {
        let value = 1.0 + 0.05 * i as f64;
        let ctx = context.clone().with_gamma_c(value).unwrap();
        let evaluations =
            evaluate_catalog(&catalog, &weights, &ctx, RoundingMode::default()).unwrap();
        let plan = synthesize_tiers(&evaluations).unwrap();
        assert_eq!(plan.assignments(), (Some("shap"), Some("cf"), Some("rule")));

        let mut ranking: Vec<(String, f64)> = evaluations
            .iter()
            .map(|e| (e.technique.id.clone(), e.selection.efficiency_ratio))
            .collect();
        ranking.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        let ids: Vec<String> = ranking.into_iter().map(|(id, _)| id).collect();

        if let Some(previous) = &previous {
            let order: Vec<&String> = previous.iter().collect();
            let xs: Vec<f64> = order
                .iter()
                .map(|id| previous.iter().position(|p| &p == id).unwrap() as f64)
                .collect();
            let ys: Vec<f64> = order
                .iter()
                .map(|id| ids.iter().position(|p| &p == id).unwrap() as f64)
                .collect();
            let tau = tau_b(&xs, &ys);
            assert!((tau - 1.0).abs() < 1e-12, "tau at {value} was {tau}");
        }
        previous = Some(ids);
    }
    println!("criterion 6 (multiplier sweep: constant plan, tau-b 1.0 throughout): pass");
}

#[test]
fn criterion_7_machine_output_determinism() {
    let bin = env!("CARGO_BIN_EXE_ess");
    for subcommand in ["score", "select", "recommend"] {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let output = Command::new(bin)
                .args([subcommand, "--format", "machine"])
                .output()
                .expect("binary runs");
            assert!(output.status.success(), "{subcommand} failed");
            outputs.push(output.stdout);
        }
        assert_eq!(outputs[0], outputs[1], "{subcommand} output differs between runs");
    }
    println!("criterion 7 (machine output byte-identical across runs): pass");
}
