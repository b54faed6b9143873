//! Scratch benchmark for grid-DP sizing (not part of the regular suites).

mod common;

use leaderline::model::Objective;
use leaderline::rational::rat;
use leaderline::sliding::{min_gap_d, uniform_height, with_candidates};
use leaderline::solver::solve_fixed;
use std::time::Instant;

#[test]
#[ignore]
fn time_one_dense_grid_solve() {
    let mut rng = common::rng(303);
    for trial in 0..6 {
        let instance = common::random_uniform_sliding_instance(&mut rng, 4);
        let h = uniform_height(&instance).unwrap();
        let d = min_gap_d(&instance.sites, &h).unwrap();
        let step = &d / rat(8);
        let grid = common::dense_grid(&instance, &step);
        let m = grid.len();
        let fixed = with_candidates(&instance, grid, None);
        let start = Instant::now();
        let out = solve_fixed(&fixed, Objective::Bends).unwrap();
        eprintln!(
            "trial {trial}: n={} d={d} m={m} feasible={} in {:?}",
            instance.sites.len(),
            out.outcome.is_feasible(),
            start.elapsed()
        );
    }
}
