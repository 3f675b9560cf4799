//! Acceptance run: one PASS/FAIL line per criterion with its timing. Exits
//! non-zero when any criterion fails.

use std::f64::consts::SQRT_2;
use std::time::{Duration, Instant};

use ontolab::cli::omega_tolerance;
use ontolab::fixtures::{self, model_fixtures, table_fixtures};
use ontolab::format::{model_from_str, read_text, table_from_str};
use ontolab::parallel;
use ontolab_core::cloning::budget_from_model;
use ontolab_core::composite::{classify, SettingGrid};
use ontolab_core::epistemicity::{general_bound_rhs, omega, quantum_overlap};
use ontolab_core::ontic::{validate_with_tolerance, OntologicalModel};
use ontolab_core::quantum::{chsh_closed_form, chsh_optimal_value, QuantumState};
use ontolab_core::reference;
use ontolab_core::search::{brute_force_budget, chsh_monte_carlo, max_overlap_with_chsh};
use ontolab_core::tolerance;

struct Verdict {
    passed: bool,
    detail: String,
}

fn check(passed: bool, detail: String) -> Verdict {
    Verdict { passed, detail }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn load_model(name: &str) -> OntologicalModel {
    let path = fixtures::data_dir().join(name);
    let text = read_text(&path).unwrap_or_else(|e| panic!("{e}"));
    model_from_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn symmetric_bound() -> Verdict {
    let target = 2.0 * SQRT_2;
    let lp = max_overlap_with_chsh(0.5, target).unwrap();
    let brute = brute_force_budget(0.5, target, 1e-3).unwrap();
    let expected = 2.0 - SQRT_2;
    check(
        (lp - expected).abs() <= 1e-9 && (brute - expected).abs() <= 2e-3,
        format!("LP {lp:.12}, grid {brute:.4}, 2 - sqrt 2 = {expected:.12}"),
    )
}

fn general_curve() -> Verdict {
    let alphas: Vec<f64> = (1..=10).map(|i| i as f64 * 0.05).collect();
    let rows = parallel::bound_sweep(&alphas, jobs()).unwrap();
    let worst = rows
        .iter()
        .map(|r| (r.max_overlap_mass - general_bound_rhs(r.alpha_sq)).abs())
        .fold(0.0, f64::max);
    let argmin = rows
        .iter()
        .min_by(|a, b| a.max_overlap_mass.total_cmp(&b.max_overlap_mass))
        .map(|r| r.alpha_sq)
        .unwrap();
    check(
        worst <= 1e-6 && (argmin - 0.5).abs() < 1e-12,
        format!(
            "{} points, worst |LP - closed form| = {worst:.1e}, minimum at {argmin}",
            rows.len()
        ),
    )
}

fn kochen_specker_contradiction() -> Verdict {
    let model = reference::kochen_specker(100_000);
    let cells = model.space().len();
    let report = validate_with_tolerance(&model, 1e-2);
    let o0 = omega(&model, "0", "+").unwrap().omega;
    let o1 = omega(&model, "1", "+").unwrap().omega;
    let f = budget_from_model(&model, "0", "1", "+")
        .unwrap()
        .feasible()
        .unwrap();
    let in_band = |o: f64| (0.99..=1.01).contains(&o);
    check(
        cells >= 100_000 && report.passed && in_band(o0) && in_band(o1) && !f.feasible && f.margin <= -0.8,
        format!(
            "{cells} cells, residual {:.1e}, Omega(0,+) = {o0:.6}, Omega(1,+) = {o1:.6}, \
             max CHSH {:.6} vs {:.6}, margin {:.6}",
            report.max_residual(),
            f.max_chsh,
            f.chsh_target,
            f.margin
        ),
    )
}

fn psi_complete() -> Verdict {
    let model = load_model("psi_complete.json");
    let report = validate_with_tolerance(&model, tolerance::ALGEBRAIC);
    let mut pairs = 0;
    let mut worst: f64 = 0.0;
    for a in model.preparations() {
        for b in model.preparations() {
            if a.id != b.id && quantum_overlap(&model, &a.id, &b.id).unwrap() > tolerance::NEAR_ORTHOGONAL {
                pairs += 1;
                worst = worst.max(omega(&model, &a.id, &b.id).unwrap().omega.abs());
            }
        }
    }
    let f = budget_from_model(&model, "0", "1", "+")
        .unwrap()
        .feasible()
        .unwrap();
    check(
        report.passed && pairs > 0 && worst == 0.0 && f.feasible && f.max_chsh == 4.0,
        format!(
            "residual {:.1e}, {pairs} non-orthogonal pairs with max Omega {worst}, max CHSH {}",
            report.max_residual(),
            f.max_chsh
        ),
    )
}

fn table_classification() -> Verdict {
    let mut got = Vec::new();
    let mut ok = true;
    for (name, _, expected) in table_fixtures() {
        let text = read_text(&fixtures::data_dir().join(name)).unwrap();
        let tag = classify(&table_from_str(&text).unwrap()).tag.as_str();
        ok &= tag == expected;
        got.push(format!("{name}={tag}"));
    }
    check(ok, got.join(", "))
}

fn proposition1() -> Verdict {
    let small = parallel::proposition1(&SettingGrid::square(&["sz", "sx"]).unwrap(), jobs()).unwrap();
    let large = parallel::proposition1(&SettingGrid::square(&["sz", "sx", "sy"]).unwrap(), jobs()).unwrap();
    check(
        small.enumerated == 256 && small.all_local() && large.all_local(),
        format!(
            "2x2: {} tables, {} anchored, {} counterexamples; 3x3: {} tables, {} anchored, {} counterexamples",
            small.enumerated,
            small.consistent,
            small.counterexamples.len(),
            large.enumerated,
            large.consistent,
            large.counterexamples.len()
        ),
    )
}

fn monte_carlo() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for alpha_sq in [0.5, 0.8] {
        let state = QuantumState::schmidt_real(alpha_sq).unwrap();
        let setting = chsh_optimal_value(&state).unwrap().setting;
        let e = chsh_monte_carlo(&state, &setting, 1_000_000, 42).unwrap();
        let target = chsh_closed_form(alpha_sq);
        let z = (e.estimate - target) / e.standard_error;
        ok &= z.abs() <= 3.0;
        parts.push(format!(
            "alpha^2={alpha_sq}: {:.5} +/- {:.5} vs {target:.5} (z = {z:.2})",
            e.estimate, e.standard_error
        ));
    }
    check(ok, parts.join("; "))
}

fn structural_vs_overlap() -> Verdict {
    let mut models: Vec<(String, OntologicalModel)> = model_fixtures(false)
        .into_iter()
        .map(|(name, _)| (name.to_string(), load_model(name)))
        .collect();
    models.push((
        "ks_qubit_100k (generated)".into(),
        reference::kochen_specker(100_000),
    ));
    let mut disagreements = 0;
    let mut parts = Vec::new();
    for (name, model) in &models {
        let tol = omega_tolerance(model);
        let od = model.is_outcome_deterministic();
        let reciprocal = model.is_reciprocal().map(|r| r.reciprocal).unwrap_or(false);
        let structural = od && reciprocal;
        let mut overlap = true;
        for a in model.preparations() {
            for b in model.preparations() {
                if a.id == b.id || quantum_overlap(model, &a.id, &b.id).unwrap() <= tolerance::NEAR_ORTHOGONAL
                {
                    continue;
                }
                overlap &= (omega(model, &a.id, &b.id).unwrap().omega - 1.0).abs() <= tol;
            }
        }
        let library = model.is_maximally_epistemic_within(tol);
        let agree = structural == overlap && matches!(&library, Ok(v) if v.maximal == structural);
        if !agree {
            disagreements += 1;
        }
        parts.push(format!(
            "{name}: {}",
            if structural { "maximal" } else { "not maximal" }
        ));
    }
    check(
        disagreements == 0,
        format!("{disagreements} disagreements; {}", parts.join(", ")),
    )
}

type Criterion = (&'static str, Duration, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 8] = [
        ("symmetric bound", Duration::from_secs(1), symmetric_bound),
        ("general bound curve", Duration::from_secs(5), general_curve),
        (
            "Kochen-Specker contradiction",
            Duration::from_secs(30),
            kochen_specker_contradiction,
        ),
        ("psi-complete model", Duration::from_secs(1), psi_complete),
        ("appendix tables", Duration::from_secs(1), table_classification),
        (
            "sequential-measurement enumeration",
            Duration::from_secs(60),
            proposition1,
        ),
        ("Monte-Carlo CHSH", Duration::from_secs(10), monte_carlo),
        (
            "structural vs overlap maximality",
            Duration::from_secs(60),
            structural_vs_overlap,
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let passed = v.passed && elapsed <= *budget;
        if !passed {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name} [{:.3} s, limit {} s] {}",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            v.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
