//! Acceptance suite: one test per criterion, each printing a pass line with
//! its observed margins (visible with `--nocapture`).
//!
//! Random-state criteria run the seeded verify checks at their stated sample
//! counts; the references for single values are direct evaluations of the
//! defining formulas, frozen in place.

use std::time::Instant;

use qpa::verify::{self, DEFAULT_SEED};
use qpa::{
    classify_convergence, critical_cubic, critical_cubic_derivative_discriminant,
    find_fixed_points, iterate, run_sweep, solve_critical_cubic, Attractor, BellDiagonalState,
    BellIndex, IterationOptions, State64, Termination,
};

const SAMPLES: usize = 100_000;

fn st(a: f64, b: f64, c: f64, d: f64) -> State64 {
    BellDiagonalState::new(a, b, c, d).unwrap()
}

fn assert_clean(outcome: &verify::PropertyOutcome) {
    assert_eq!(
        outcome.violations, 0,
        "{}: {} violations out of {}",
        outcome.name, outcome.violations, outcome.checked
    );
    assert!(outcome.checked > 0);
}

fn margins(outcome: &verify::PropertyOutcome) -> String {
    outcome
        .margins
        .iter()
        .map(|m| format!("{} = {:.3e}", m.what, m.value))
        .collect::<Vec<_>>()
        .join(", ")
}

#[test]
fn criterion_01_example_trajectory() {
    let started = Instant::now();
    let initial = st(0.57, 0.41, 0.01, 0.01);
    let traj = iterate(initial, &IterationOptions::default());

    // direct evaluation of the step formulas from the stored weights
    let [a, b, c, d] = initial.components();
    let p = (a + b) * (a + b) + (c + d) * (c + d);
    let expected_a1 = (a * a + b * b) / p;
    let a1 = traj.states[1].a();
    assert!(a1 < initial.a(), "a must dip on the first step");
    assert!((a1 - expected_a1).abs() <= 1e-12);
    assert!((a1 - 0.513115).abs() <= 1e-6);

    let min_df = traj
        .f_values
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    assert!(min_df >= -1e-15, "f decreased by {:e}", -min_df);

    assert_eq!(traj.terminated, Termination::Converged);
    assert!(traj.iterations <= 60, "took {} iterations", traj.iterations);
    let fidelity = traj.final_state().fidelity(BellIndex::PhiPlus);
    assert!(fidelity >= 1.0 - 1e-9);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0);
    println!(
        "criterion 01 (example trajectory): PASS — a1 = {:.9}, {} iterations, min step delta_f = {:.3e}, {:?}",
        a1, traj.iterations, min_df, elapsed
    );
}

#[test]
fn criterion_02_cubic_root() {
    let started = Instant::now();
    let result = solve_critical_cubic::<f64>(1e-12).unwrap();
    let elapsed = started.elapsed();

    assert!((result.y0 - 0.205122).abs() <= 1e-6);
    let residual = critical_cubic(result.y0);
    assert!(residual.abs() <= 1e-12);
    assert!(critical_cubic_derivative_discriminant::<f64>() < 0.0);
    assert!(elapsed.as_secs_f64() < 1e-3, "solver took {:?}", elapsed);
    println!(
        "criterion 02 (cubic root): PASS — y0 = {:.12}, residual = {:.3e}, discriminant = {}, {:?}",
        result.y0,
        residual,
        critical_cubic_derivative_discriminant::<f64>(),
        elapsed
    );
}

#[test]
fn criterion_03_monotonicity() {
    let outcome = verify::check_monotonicity(SAMPLES, DEFAULT_SEED);
    assert_clean(&outcome);
    println!(
        "criterion 03 (monotonicity over {} samples): PASS — {}",
        outcome.checked,
        margins(&outcome)
    );
}

#[test]
fn criterion_04_reduction_equivalence() {
    let outcome = verify::check_reduction_equivalence(SAMPLES, DEFAULT_SEED);
    assert_clean(&outcome);
    println!(
        "criterion 04 (reduction equivalence over {} samples): PASS — {}",
        outcome.checked,
        margins(&outcome)
    );
}

#[test]
fn criterion_05_identity_residuals() {
    let outcome = verify::check_identity_residuals(SAMPLES, DEFAULT_SEED);
    assert_clean(&outcome);
    for m in &outcome.margins {
        assert!(m.value <= 1e-13);
    }
    println!(
        "criterion 05 (identity residuals over {} samples): PASS — {}",
        outcome.checked,
        margins(&outcome)
    );
}

#[test]
fn criterion_06_region_trapping() {
    let below = verify::check_region_trapping_below(SAMPLES, DEFAULT_SEED);
    assert_clean(&below);
    let above = verify::check_region_trapping_above(SAMPLES, DEFAULT_SEED);
    assert_clean(&above);
    println!(
        "criterion 06 (region trapping, 2 x {} samples): PASS — {}; {}",
        SAMPLES,
        margins(&below),
        margins(&above)
    );
}

#[test]
fn criterion_07_swap_commutation() {
    let outcome = verify::check_swap_commutation(SAMPLES, DEFAULT_SEED);
    assert_clean(&outcome);
    println!(
        "criterion 07 (swap commutation over {} samples): PASS — {}",
        outcome.checked,
        margins(&outcome)
    );
}

#[test]
fn criterion_08_g_negativity() {
    let random = verify::check_g_negativity(SAMPLES, DEFAULT_SEED);
    assert_clean(&random);
    let scan = verify::check_boundary_scan(2001);
    assert_clean(&scan);
    println!(
        "criterion 08 (g negativity, {} samples + boundary scan): PASS — {}; {}",
        random.checked,
        margins(&random),
        margins(&scan)
    );
}

#[test]
fn criterion_09_theorem_sweep() {
    let started = Instant::now();
    let opts = IterationOptions {
        epsilon: 1e-6,
        max_iters: 10_000,
        record_full: false,
    };
    let report = run_sweep(0.02, &opts).unwrap();
    let elapsed = started.elapsed();

    assert_eq!(report.cells.len(), 23_426);
    assert!(
        report.violations.is_empty(),
        "violating cells: {:?}",
        report
            .violations
            .iter()
            .take(5)
            .map(|i| report.cells[*i].state.components())
            .collect::<Vec<_>>()
    );
    assert!(elapsed.as_secs_f64() < 60.0, "sweep took {:?}", elapsed);
    println!(
        "criterion 09 (theorem sweep, 23426 cells): PASS — zero violations, {:?}",
        elapsed
    );
}

#[test]
fn criterion_10_success_probability_bounds() {
    let outcome = verify::check_success_probability(1_000_000, DEFAULT_SEED);
    assert_clean(&outcome);
    println!(
        "criterion 10 (p bounds over {} samples): PASS — {}",
        outcome.checked,
        margins(&outcome)
    );
}

#[test]
fn criterion_11_fixed_point_census() {
    let found = find_fixed_points(0.05, 1e-10).unwrap();
    let expected = [
        st(1.0, 0.0, 0.0, 0.0),
        st(0.0, 0.0, 1.0, 0.0),
        st(0.25, 0.25, 0.25, 0.25),
        st(0.5, 0.0, 0.5, 0.0),
    ];
    for e in &expected {
        assert!(
            found.iter().any(|s| s.max_abs_diff(e) <= 1e-9),
            "census is missing {:?}",
            e.components()
        );
    }
    // the direct-substitution oracle: each expected state maps to itself
    for e in &expected {
        assert!(qpa::qpa_step(e).output.max_abs_diff(e) <= 1e-15);
    }
    println!(
        "criterion 11 (fixed-point census): PASS — {} grid fixed points, all four references present",
        found.len()
    );
}

/// Not a numbered criterion: the classified attractors behind the sweep.
#[test]
fn attractor_labels_match_the_basins() {
    let opts = IterationOptions::default();
    assert_eq!(
        classify_convergence(st(0.2, 0.6, 0.1, 0.1), &opts).attractor,
        Attractor::PhiPlus
    );
    assert_eq!(
        classify_convergence(st(0.1, 0.1, 0.6, 0.2), &opts).attractor,
        Attractor::PsiPlus
    );
    let interior = classify_convergence(st(0.4, 0.3, 0.2, 0.1), &opts);
    assert!(matches!(
        interior.attractor,
        Attractor::None | Attractor::WernerFixedPoint
    ));
    assert!(interior.peak_component < 0.5);
}
