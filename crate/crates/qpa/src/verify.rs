//! Seeded numerical certification of the map's proof obligations.
//!
//! Each check draws its own deterministic sample stream, counts violations
//! against a pinned tolerance, and reports the worst margin it saw. The
//! tolerances here assume f64 arithmetic, so this module is not generic.

use crate::lyapunov::{f_value, g_boundary_scan, g_value, monotonicity_delta};
use crate::map::{identity_residuals, qpa_step, success_probability};
use crate::sample::SimplexSampler;
use crate::state::{BellDiagonalState, BellIndex};

pub const DEFAULT_SEED: u64 = 42;

/// A named worst-case quantity observed during a check.
#[derive(Debug, Clone, PartialEq)]
pub struct Margin {
    pub what: &'static str,
    pub value: f64,
}

/// Outcome of one property check.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    /// Number of evaluations performed.
    pub checked: usize,
    pub violations: usize,
    pub passed: bool,
    pub margins: Vec<Margin>,
}

impl PropertyOutcome {
    fn finish(name: &'static str, checked: usize, violations: usize, margins: Vec<Margin>) -> Self {
        Self {
            name,
            checked,
            violations,
            passed: violations == 0,
            margins,
        }
    }
}

/// All checks together.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub samples: usize,
    pub seed: u64,
    pub outcomes: Vec<PropertyOutcome>,
    pub all_passed: bool,
}

/// Runs every check with `samples` draws each (the boundary scan uses
/// `samples` points per segment, at least 2).
pub fn run_all(samples: usize, seed: u64) -> VerifyReport {
    let outcomes = vec![
        check_monotonicity(samples, seed),
        check_reduction_equivalence(samples, seed),
        check_identity_residuals(samples, seed),
        check_region_trapping_below(samples, seed),
        check_region_trapping_above(samples, seed),
        check_swap_commutation(samples, seed),
        check_g_negativity(samples, seed),
        check_boundary_scan(samples.max(2)),
        check_success_probability(samples, seed),
        check_simplex_preservation(samples, seed),
        check_fidelity_sum(samples, seed),
        check_f_maximum(samples, seed),
        check_boundary_invariance(samples, seed),
    ];
    let all_passed = outcomes.iter().all(|o| o.passed);
    VerifyReport {
        samples,
        seed,
        outcomes,
        all_passed,
    }
}

/// For a > 0.5: Δf > 0 whenever g < -1e-12, and Δf ≥ -1e-15 always. States
/// already at f > 1 - 1e-10 are skipped; there Δf underflows toward zero.
pub fn check_monotonicity(samples: usize, seed: u64) -> PropertyOutcome {
    let mut sampler = SimplexSampler::with_stream(seed, 1);
    let mut violations = 0;
    let mut checked = 0;
    let mut min_df_strict = f64::INFINITY;
    let mut min_df_all = f64::INFINITY;
    for _ in 0..samples {
        let s = sampler.state_in_region_r::<f64>();
        if f_value(&s) > 1.0 - 1e-10 {
            continue;
        }
        checked += 1;
        let (df, g) = monotonicity_delta(&s);
        min_df_all = min_df_all.min(df);
        if df < -1e-15 {
            violations += 1;
        }
        if g < -1e-12 {
            min_df_strict = min_df_strict.min(df);
            if df <= 0.0 {
                violations += 1;
            }
        }
    }
    let mut margins = vec![Margin {
        what: "min delta_f over all samples",
        value: min_df_all,
    }];
    if min_df_strict.is_finite() {
        margins.push(Margin {
            what: "min delta_f where g < -1e-12",
            value: min_df_strict,
        });
    }
    PropertyOutcome::finish("monotonicity", checked, violations, margins)
}

/// For a > 0.5: sign(Δf) = -sign(g) whenever |g| > 1e-12, and |Δf| ≤ 1e-12
/// whenever |g| ≤ 1e-14 (the algebraic reduction of the increase condition).
pub fn check_reduction_equivalence(samples: usize, seed: u64) -> PropertyOutcome {
    let mut sampler = SimplexSampler::with_stream(seed, 2);
    let mut violations = 0;
    let mut min_signed = f64::INFINITY;
    let mut max_df_tiny_g: Option<f64> = None;
    for _ in 0..samples {
        let s = sampler.state_in_region_r::<f64>();
        let (df, g) = monotonicity_delta(&s);
        if g.abs() > 1e-12 {
            let signed = -g.signum() * df;
            min_signed = min_signed.min(signed);
            if signed <= 0.0 {
                violations += 1;
            }
        } else if g.abs() <= 1e-14 {
            let m = max_df_tiny_g.get_or_insert(0.0);
            *m = m.max(df.abs());
            if df.abs() > 1e-12 {
                violations += 1;
            }
        }
    }
    let mut margins = Vec::new();
    if min_signed.is_finite() {
        margins.push(Margin {
            what: "min -sign(g) * delta_f where |g| > 1e-12",
            value: min_signed,
        });
    }
    if let Some(m) = max_df_tiny_g {
        margins.push(Margin {
            what: "max |delta_f| where |g| <= 1e-14",
            value: m,
        });
    }
    PropertyOutcome::finish("reduction_equivalence", samples, violations, margins)
}

/// Both step identities hold to 1e-13 on random states.
pub fn check_identity_residuals(samples: usize, seed: u64) -> PropertyOutcome {
    let mut sampler = SimplexSampler::with_stream(seed, 3);
    let mut violations = 0;
    let mut max_ra: f64 = 0.0;
    let mut max_rb: f64 = 0.0;
    for _ in 0..samples {
        let s = sampler.state::<f64>();
        let (ra, rb) = identity_residuals(&s);
        max_ra = max_ra.max(ra.abs());
        max_rb = max_rb.max(rb.abs());
        if ra.abs() > 1e-13 || rb.abs() > 1e-13 {
            violations += 1;
        }
    }
    PropertyOutcome::finish(
        "identity_residuals",
        samples,
        violations,
        vec![
            Margin {
                what: "max |residual of 1-2A identity|",
                value: max_ra,
            },
            Margin {
                what: "max |residual of 1-2B identity|",
                value: max_rb,
            },
        ],
    )
}

/// All components below 0.5 stay below 0.5 after one step.
pub fn check_region_trapping_below(samples: usize, seed: u64) -> PropertyOutcome {
    let mut sampler = SimplexSampler::with_stream(seed, 4);
    let mut violations = 0;
    let mut min_gap = f64::INFINITY;
    for _ in 0..samples {
        let s = sampler.state_all_below::<f64>();
        let out = qpa_step(&s).output;
        let gap = 0.5 - out.max_component();
        min_gap = min_gap.min(gap);
        if gap <= 0.0 {
            violations += 1;
        }
    }
    PropertyOutcome::finish(
        "region_trapping_below",
        samples,
        violations,
        vec![Margin {
            what: "min 0.5 - max output component",
            value: min_gap,
        }],
    )
}

/// a > 0.5 gives A > 0.5 after one step.
pub fn check_region_trapping_above(samples: usize, seed: u64) -> PropertyOutcome {
    let mut sampler = SimplexSampler::with_stream(seed, 5);
    let mut violations = 0;
    let mut min_gap = f64::INFINITY;
    for _ in 0..samples {
        let s = sampler.state_in_region_r::<f64>();
        let gap = qpa_step(&s).output.a() - 0.5;
        min_gap = min_gap.min(gap);
        if gap <= 0.0 {
            violations += 1;
        }
    }
    PropertyOutcome::finish(
        "region_trapping_above",
        samples,
        violations,
        vec![Margin {
            what: "min A - 0.5",
            value: min_gap,
        }],
    )
}

/// The step commutes with the a<->c, b<->d exchange to 1e-15 per component,
/// with equal success probabilities.
pub fn check_swap_commutation(samples: usize, seed: u64) -> PropertyOutcome {
    let mut sampler = SimplexSampler::with_stream(seed, 6);
    let mut violations = 0;
    let mut max_state_diff: f64 = 0.0;
    let mut max_p_diff: f64 = 0.0;
    for _ in 0..samples {
        let s = sampler.state::<f64>();
        let direct = qpa_step(&s);
        let swapped = qpa_step(&s.swap_symmetry());
        let state_diff = swapped.output.max_abs_diff(&direct.output.swap_symmetry());
        let p_diff = (swapped.p - direct.p).abs();
        max_state_diff = max_state_diff.max(state_diff);
        max_p_diff = max_p_diff.max(p_diff);
        if state_diff > 1e-15 || p_diff > 1e-15 {
            violations += 1;
        }
    }
    PropertyOutcome::finish(
        "swap_commutation",
        samples,
        violations,
        vec![
            Margin {
                what: "max per-component commutator",
                value: max_state_diff,
            },
            Margin {
                what: "max |p difference|",
                value: max_p_diff,
            },
        ],
    )
}

/// g < 0 on the open region {c, d ≥ 0, c + d < 0.5} away from the origin.
pub fn check_g_negativity(samples: usize, seed: u64) -> PropertyOutcome {
    let mut sampler = SimplexSampler::with_stream(seed, 7);
    let mut violations = 0;
    let mut max_g = f64::NEG_INFINITY;
    for _ in 0..samples {
        let (c, d) = sampler.g_domain_point::<f64>();
        let g = g_value(c, d);
        max_g = max_g.max(g);
        if g >= 0.0 {
            violations += 1;
        }
    }
    PropertyOutcome::finish(
        "g_negativity",
        samples,
        violations,
        vec![Margin {
            what: "max g over sampled region",
            value: max_g,
        }],
    )
}

/// On the three boundary segments g vanishes only at c = d = 0 and
/// c = d = 0.25 (to 1e-15) and is strictly negative everywhere else.
pub fn check_boundary_scan(samples: usize) -> PropertyOutcome {
    let scan = g_boundary_scan::<f64>(samples);
    let checked = scan.len();
    let mut violations = 0;
    let mut max_nonspecial = f64::NEG_INFINITY;
    let mut max_special: f64 = 0.0;
    for s in scan {
        let special = (s.c == 0.0 && s.d == 0.0)
            || ((s.c - 0.25).abs() <= 1e-15 && (s.d - 0.25).abs() <= 1e-15);
        if special {
            max_special = max_special.max(s.g.abs());
            if s.g.abs() > 1e-15 {
                violations += 1;
            }
        } else {
            max_nonspecial = max_nonspecial.max(s.g);
            if s.g >= -1e-15 {
                violations += 1;
            }
        }
    }
    PropertyOutcome::finish(
        "g_boundary_scan",
        checked,
        violations,
        vec![
            Margin {
                what: "max g away from the two zeros",
                value: max_nonspecial,
            },
            Margin {
                what: "max |g| at the two zeros",
                value: max_special,
            },
        ],
    )
}

/// p stays in [0.5, 1] on the simplex.
pub fn check_success_probability(samples: usize, seed: u64) -> PropertyOutcome {
    let mut sampler = SimplexSampler::with_stream(seed, 8);
    let mut violations = 0;
    let mut min_p = f64::INFINITY;
    let mut max_p = f64::NEG_INFINITY;
    for _ in 0..samples {
        let p = success_probability(&sampler.state::<f64>());
        min_p = min_p.min(p);
        max_p = max_p.max(p);
        if !(0.5..=1.0).contains(&p) {
            violations += 1;
        }
    }
    PropertyOutcome::finish(
        "success_probability_bounds",
        samples,
        violations,
        vec![
            Margin {
                what: "min p - 0.5",
                value: min_p - 0.5,
            },
            Margin {
                what: "1 - max p",
                value: 1.0 - max_p,
            },
        ],
    )
}

/// Step outputs are valid states: nonnegative, summing to 1 within 1e-12.
pub fn check_simplex_preservation(samples: usize, seed: u64) -> PropertyOutcome {
    let mut sampler = SimplexSampler::with_stream(seed, 9);
    let mut violations = 0;
    let mut max_sum_err: f64 = 0.0;
    let mut min_component = f64::INFINITY;
    for _ in 0..samples {
        let out = qpa_step(&sampler.state::<f64>()).output;
        let comps = out.components();
        let sum = (comps[0] + comps[1]) + (comps[2] + comps[3]);
        max_sum_err = max_sum_err.max((sum - 1.0).abs());
        min_component = min_component.min(comps.iter().copied().fold(f64::INFINITY, f64::min));
        if (sum - 1.0).abs() > 1e-12 || comps.iter().any(|x| *x < 0.0) {
            violations += 1;
        }
    }
    PropertyOutcome::finish(
        "simplex_preservation",
        samples,
        violations,
        vec![
            Margin {
                what: "max |component sum - 1|",
                value: max_sum_err,
            },
            Margin {
                what: "min output component",
                value: min_component,
            },
        ],
    )
}

/// The four Bell fidelities sum to 1 within 1e-12.
pub fn check_fidelity_sum(samples: usize, seed: u64) -> PropertyOutcome {
    let mut sampler = SimplexSampler::with_stream(seed, 10);
    let mut violations = 0;
    let mut max_err: f64 = 0.0;
    for _ in 0..samples {
        let s = sampler.state::<f64>();
        let total: f64 = BellIndex::ALL.iter().map(|ix| s.fidelity(*ix)).sum();
        let err = (total - 1.0).abs();
        max_err = max_err.max(err);
        if err > 1e-12 {
            violations += 1;
        }
    }
    PropertyOutcome::finish(
        "fidelity_sum",
        samples,
        violations,
        vec![Margin {
            what: "max |fidelity sum - 1|",
            value: max_err,
        }],
    )
}

/// On a ∈ [0.5, 1], b ∈ [0, 0.5], f tops out at 1 and reaches it only at
/// the vertex (a, b) = (1, 0).
pub fn check_f_maximum(samples: usize, seed: u64) -> PropertyOutcome {
    let mut sampler = SimplexSampler::with_stream(seed, 11);
    let mut violations = 0;
    let mut max_f = f64::NEG_INFINITY;
    for _ in 0..samples {
        let f = f_value(&sampler.state_in_region_r::<f64>());
        max_f = max_f.max(f);
        if f >= 1.0 {
            violations += 1;
        }
    }
    let vertex = BellDiagonalState::new(1.0, 0.0, 0.0, 0.0).unwrap();
    let checked = samples + 1;
    if f_value(&vertex) != 1.0 {
        violations += 1;
    }
    PropertyOutcome::finish(
        "f_maximum",
        checked,
        violations,
        vec![Margin {
            what: "1 - max f over random region samples",
            value: 1.0 - max_f,
        }],
    )
}

/// a = 0.5 is an invariant line: the step returns A = 0.5 within 1e-14.
pub fn check_boundary_invariance(samples: usize, seed: u64) -> PropertyOutcome {
    let mut sampler = SimplexSampler::with_stream(seed, 12);
    let mut violations = 0;
    let mut max_dev: f64 = 0.0;
    for _ in 0..samples {
        let rest = sampler.state::<f64>();
        // squeeze a three-part split of 0.5 out of a simplex draw
        let scale = 0.5 / (1.0 - rest.a());
        let s = BellDiagonalState::new(
            0.5,
            rest.b() * scale,
            rest.c() * scale,
            rest.d() * scale,
        );
        let s = match s {
            Ok(s) => s,
            Err(_) => continue,
        };
        let dev = (qpa_step(&s).output.a() - 0.5).abs();
        max_dev = max_dev.max(dev);
        if dev > 1e-14 {
            violations += 1;
        }
    }
    PropertyOutcome::finish(
        "boundary_invariance",
        samples,
        violations,
        vec![Margin {
            what: "max |A - 0.5| from a = 0.5 inputs",
            value: max_dev,
        }],
    )
}
