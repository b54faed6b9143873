//! The canonical-candidate discretization against a dense grid oracle.
//!
//! The grid stands in for the continuum: step `d/8` (an eighth of the least
//! distance by which a vertical site distance misses a height multiple),
//! anchored so it contains every site height and, by the lattice-friendly
//! construction of the test instances, every canonical candidate. Grid
//! feasibility is decided by the fixed-candidate solver, which the
//! enumeration suite validates independently; a small-grid enumeration
//! cross-check keeps that substitution honest here.

mod common;

use leaderline::model::Objective;
use leaderline::oracle::{oracle_solve, OracleLimits};
use leaderline::rational::{frac, rat};
use leaderline::sliding::{
    canonical_candidates, canonical_candidates_vmin, min_gap_d, solve_sliding, uniform_height,
    with_candidates,
};
use leaderline::solver::solve_fixed;
use leaderline::verify::verify;

#[test]
fn bends_feasibility_and_optimum_match_the_dense_grid() {
    let mut rng = common::rng(303);
    for trial in 0..40 {
        let instance = common::random_uniform_sliding_instance(&mut rng, 4);
        let h = uniform_height(&instance).unwrap();
        let d = min_gap_d(&instance.sites, &h).unwrap();
        let step = &d / rat(8);

        // the lattice recipe keeps canonical candidates on the grid
        let grid = common::dense_grid(&instance, &step);
        let eps = &d / rat(2);
        for y in canonical_candidates(&instance.sites, &h, &eps) {
            if y >= grid[0] && y <= grid[grid.len() - 1] {
                assert!(
                    grid.binary_search(&y).is_ok(),
                    "canonical candidate {y} off the grid (trial {trial})"
                );
            }
        }

        let sliding = solve_sliding(&instance, Objective::Bends, None).unwrap();
        let fixed = with_candidates(&instance, grid, None);
        let on_grid = solve_fixed(&fixed, Objective::Bends).unwrap();
        assert_eq!(
            sliding.report.outcome.is_feasible(),
            on_grid.outcome.is_feasible(),
            "trial {trial}: {instance:?}"
        );
        if let (Some(a), Some(b)) = (sliding.report.outcome.value(), on_grid.outcome.value()) {
            assert_eq!(a, b, "trial {trial}: bend counts differ\n{instance:?}");
        }
        if let leaderline::solver::SolveOutcome::Feasible { labeling, .. } =
            &sliding.report.outcome
        {
            let report = verify(&sliding.discretized, labeling, Objective::Bends, None).unwrap();
            assert!(report.admissible, "trial {trial}: {report:?}");
        }
    }
}

#[test]
fn length_optimum_with_separation_matches_the_dense_grid() {
    let mut rng = common::rng(404);
    let v_min = frac(1, 16); // multiple of every d/8 the recipe can produce
    for trial in 0..25 {
        let instance = common::random_uniform_sliding_instance(&mut rng, 4);
        let h = uniform_height(&instance).unwrap();
        let d = min_gap_d(&instance.sites, &h).unwrap();
        let step = &d / rat(8);

        let grid = common::dense_grid(&instance, &step);
        for y in canonical_candidates_vmin(&instance.sites, &h, &v_min) {
            if y >= grid[0] && y <= grid[grid.len() - 1] {
                assert!(
                    grid.binary_search(&y).is_ok(),
                    "separation candidate {y} off the grid (trial {trial})"
                );
            }
        }

        let sliding = solve_sliding(&instance, Objective::Length, Some(&v_min)).unwrap();
        let fixed = with_candidates(&instance, grid, Some(v_min.clone()));
        let on_grid = solve_fixed(&fixed, Objective::Length).unwrap();
        assert_eq!(
            sliding.report.outcome.is_feasible(),
            on_grid.outcome.is_feasible(),
            "trial {trial}: {instance:?}"
        );
        if let (Some(a), Some(b)) = (sliding.report.outcome.value(), on_grid.outcome.value()) {
            assert_eq!(a, b, "trial {trial}: lengths differ\n{instance:?}");
        }
        if let leaderline::solver::SolveOutcome::Feasible { labeling, .. } =
            &sliding.report.outcome
        {
            let report =
                verify(&sliding.discretized, labeling, Objective::Length, Some(&v_min)).unwrap();
            assert!(report.admissible, "trial {trial}: {report:?}");
        }
    }
}

/// The grid-feasibility decision above leans on the fixed-candidate solver;
/// on coarse grids small enough for enumeration the two agree.
#[test]
fn grid_decisions_cross_checked_by_enumeration() {
    let mut rng = common::rng(505);
    let limits = OracleLimits::with_max_sites(4);
    let mut checked = 0;
    for _ in 0..30 {
        let instance = common::random_uniform_sliding_instance(&mut rng, 3);
        let h = uniform_height(&instance).unwrap();
        let d = min_gap_d(&instance.sites, &h).unwrap();
        // coarse: quarter of the usual density
        let step = &d / rat(2);
        let grid = common::dense_grid(&instance, &step);
        if grid.len() > 26 {
            continue;
        }
        let fixed = with_candidates(&instance, grid, None);
        let dp = solve_fixed(&fixed, Objective::Bends).unwrap();
        let oracle = oracle_solve(&fixed, Objective::Bends, None, &limits).unwrap();
        assert_eq!(dp.outcome.is_feasible(), oracle.is_feasible());
        assert_eq!(dp.outcome.value(), oracle.value());
        checked += 1;
    }
    assert!(checked >= 5, "too few grids small enough to enumerate");
}
