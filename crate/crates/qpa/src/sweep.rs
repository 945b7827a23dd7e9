//! Exhaustive classification of the state simplex on a rational grid.
//!
//! Every grid cell is iterated to convergence and checked against the
//! predicted basin: one component above 0.5 must purify to its vertex, and a
//! cell with every component below 0.5 must never cross 0.5. The aggregate
//! is an empirical certificate of the convergence theorem at the grid's
//! resolution.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::dynamics::{classify_convergence, Attractor, ConvergenceReport, IterationOptions};
use crate::float::{half, lit, Float};
use crate::state::{BellDiagonalState, RegionClass};
use crate::QpaError;

/// One classified grid cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell<T> {
    pub state: BellDiagonalState<T>,
    pub region: RegionClass,
    pub report: ConvergenceReport<T>,
}

/// Result of sweeping a whole grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport<T> {
    pub grid_step: T,
    /// Every grid cell exactly once, in grid enumeration order.
    pub cells: Vec<SweepCell<T>>,
    /// Cell count per (region, observed attractor) pair.
    pub tallies: BTreeMap<(RegionClass, Attractor), usize>,
    /// Indices into `cells` whose outcome contradicts the predicted basin.
    /// Empty when the theorem holds on the grid.
    pub violations: Vec<usize>,
}

/// Validates that the step is 1/n for an integer n ≥ 1 and returns n.
pub fn grid_subdivisions<T: Float>(grid_step: T) -> Result<usize, QpaError> {
    if !(grid_step > T::zero() && grid_step <= T::one()) {
        return Err(QpaError::RejectedStep(format!(
            "grid step {:?} outside (0, 1]",
            grid_step
        )));
    }
    let inv = T::one() / grid_step;
    let n = inv.round();
    if (inv - n).abs() > lit::<T>(1e-9) {
        return Err(QpaError::RejectedStep(format!(
            "1/{:?} = {:?} is not an integer",
            grid_step, inv
        )));
    }
    Ok(n.to_usize().expect("subdivision count fits usize"))
}

/// All states (i/n, j/n, k/n, l/n) with i+j+k+l = n, in lexicographic
/// (i, j, k) order. The count is C(n+3, 3).
pub fn simplex_grid<T: Float>(grid_step: T) -> Result<Vec<BellDiagonalState<T>>, QpaError> {
    let n = grid_subdivisions(grid_step)?;
    let denom = T::from_usize(n).expect("subdivision count fits scalar");
    let coord = |i: usize| T::from_usize(i).unwrap() / denom;
    let mut grid = Vec::with_capacity((n + 3) * (n + 2) * (n + 1) / 6);
    for i in 0..=n {
        for j in 0..=(n - i) {
            for k in 0..=(n - i - j) {
                let l = n - i - j - k;
                let state = BellDiagonalState::new(coord(i), coord(j), coord(k), coord(l))
                    .expect("grid point lies on the simplex");
                grid.push(state);
            }
        }
    }
    Ok(grid)
}

/// Basin predicted from the initial region; `None` for Boundary cells, which
/// are exempt from prediction.
pub fn predicted_attractor(region: RegionClass) -> Option<Attractor> {
    match region {
        RegionClass::InRegionR | RegionClass::BIsLarge => Some(Attractor::PhiPlus),
        RegionClass::CIsLarge | RegionClass::DIsLarge => Some(Attractor::PsiPlus),
        RegionClass::NonPurifiable => Some(Attractor::None),
        RegionClass::Boundary => None,
    }
}

/// Whether an observed outcome satisfies the prediction. A predicted `None`
/// means "not purified": stalling on the uniform fixed point satisfies it.
fn satisfies(predicted: Attractor, cell: &SweepCell<impl Float>) -> bool {
    match predicted {
        Attractor::None => matches!(
            cell.report.attractor,
            Attractor::None | Attractor::WernerFixedPoint
        ),
        p => cell.report.attractor == p,
    }
}

/// Classifies every grid cell. Cells are independent and processed in
/// parallel; the merge preserves grid order, so the report is identical for
/// any worker count.
///
/// Intermediate states are not recorded (the peak component still is), so
/// grids of tens of thousands of cells stay cheap.
pub fn run_sweep<T: Float>(
    grid_step: T,
    opts: &IterationOptions<T>,
) -> Result<SweepReport<T>, QpaError> {
    let grid = simplex_grid(grid_step)?;
    let sparse = IterationOptions {
        record_full: false,
        ..*opts
    };
    let cells: Vec<SweepCell<T>> = grid
        .par_iter()
        .map(|state| {
            let region = state.region();
            let report = classify_convergence(*state, &sparse);
            SweepCell {
                state: *state,
                region,
                report,
            }
        })
        .collect();

    let mut tallies = BTreeMap::new();
    let mut violations = Vec::new();
    for (index, cell) in cells.iter().enumerate() {
        *tallies.entry((cell.region, cell.report.attractor)).or_insert(0) += 1;
        if let Some(predicted) = predicted_attractor(cell.region) {
            let mut bad = !satisfies(predicted, cell);
            // an all-below cell must also never have crossed 0.5 in flight
            if cell.region == RegionClass::NonPurifiable
                && cell.report.peak_component >= half::<T>()
            {
                bad = true;
            }
            if bad {
                violations.push(index);
            }
        }
    }

    Ok(SweepReport {
        grid_step,
        cells,
        tallies,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(epsilon: f64) -> IterationOptions<f64> {
        IterationOptions {
            epsilon,
            ..IterationOptions::default()
        }
    }

    #[test]
    fn grid_counts() {
        assert_eq!(simplex_grid::<f64>(1.0).unwrap().len(), 4);
        assert_eq!(simplex_grid::<f64>(0.5).unwrap().len(), 10);
        assert_eq!(simplex_grid::<f64>(0.05).unwrap().len(), 1771);
    }

    #[test]
    fn unit_grid_is_the_four_vertices() {
        let grid = simplex_grid::<f64>(1.0).unwrap();
        let comps: Vec<[f64; 4]> = grid.iter().map(|s| s.components()).collect();
        assert_eq!(
            comps,
            vec![
                [0.0, 0.0, 0.0, 1.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
                [1.0, 0.0, 0.0, 0.0],
            ]
        );
    }

    #[test]
    fn grid_cells_are_unique_and_ordered() {
        let grid = simplex_grid::<f64>(0.2).unwrap();
        for w in grid.windows(2) {
            let x = w[0].components();
            let y = w[1].components();
            assert!(x < y, "grid out of order: {:?} {:?}", x, y);
        }
        for i in 0..grid.len() {
            for j in (i + 1)..grid.len() {
                assert!(grid[i].max_abs_diff(&grid[j]) > 0.0);
            }
        }
    }

    #[test]
    fn non_integer_reciprocal_is_rejected() {
        assert!(matches!(
            simplex_grid::<f64>(0.3),
            Err(QpaError::RejectedStep(_))
        ));
        assert!(grid_subdivisions::<f64>(0.0).is_err());
    }

    #[test]
    fn grid_is_swap_symmetric_as_a_set() {
        let grid = simplex_grid::<f64>(0.25).unwrap();
        for s in &grid {
            let w = s.swap_symmetry();
            assert!(grid.iter().any(|t| t.max_abs_diff(&w) == 0.0));
        }
    }

    #[test]
    fn coarse_sweep_has_no_violations() {
        let report = run_sweep(0.5, &opts(1e-6)).unwrap();
        assert_eq!(report.cells.len(), 10);
        assert!(report.violations.is_empty());
        // the vertex cell is already converged
        let vertex = report
            .cells
            .iter()
            .find(|c| c.state.a() == 1.0)
            .expect("vertex cell");
        assert_eq!(vertex.region, RegionClass::InRegionR);
        assert_eq!(vertex.report.attractor, Attractor::PhiPlus);
        assert_eq!(vertex.report.iterations, 0);
    }

    #[test]
    fn uniform_cell_counts_as_not_purified() {
        let report = run_sweep(0.25, &opts(1e-6)).unwrap();
        assert!(report.violations.is_empty());
        let uniform = report
            .cells
            .iter()
            .find(|c| c.state.components() == [0.25; 4])
            .expect("uniform cell");
        assert_eq!(uniform.region, RegionClass::NonPurifiable);
        assert_eq!(uniform.report.attractor, Attractor::WernerFixedPoint);
    }

    #[test]
    fn fine_sweep_certifies_the_grid() {
        let report = run_sweep(0.05, &opts(1e-6)).unwrap();
        assert_eq!(report.cells.len(), 1771);
        assert!(
            report.violations.is_empty(),
            "violating cells: {:?}",
            report
                .violations
                .iter()
                .map(|i| report.cells[*i].state.components())
                .collect::<Vec<_>>()
        );
        // swap relabeling matches the two purified tallies pairwise
        let count = |r, a| report.tallies.get(&(r, a)).copied().unwrap_or(0);
        assert_eq!(
            count(RegionClass::InRegionR, Attractor::PhiPlus),
            count(RegionClass::CIsLarge, Attractor::PsiPlus)
        );
        assert_eq!(
            count(RegionClass::BIsLarge, Attractor::PhiPlus),
            count(RegionClass::DIsLarge, Attractor::PsiPlus)
        );
        // every region-R cell on this grid purifies: 220 of them
        assert_eq!(count(RegionClass::InRegionR, Attractor::PhiPlus), 220);
    }

    #[test]
    fn report_is_identical_for_any_worker_count() {
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| run_sweep(0.1, &opts(1e-6)).unwrap())
        };
        assert_eq!(run(1), run(4));
    }
}
