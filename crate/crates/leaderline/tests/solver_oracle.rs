//! Cross-validation of the dynamic program against exhaustive enumeration on
//! small random instances, including constraint-monotonicity checks.

mod common;

use leaderline::model::{Constraints, Objective, SiteId};
use leaderline::oracle::{oracle_solve, OracleLimits, OracleOutcome};
use leaderline::solver::{solve_fixed, SolveOutcome};
use leaderline::verify::verify;
use rand::Rng;

#[test]
fn dp_matches_enumeration_on_random_instances() {
    let mut rng = common::rng(101);
    let limits = OracleLimits::default();
    for trial in 0..120 {
        let instance = common::random_fixed_instance(&mut rng, 5, 8);
        for objective in [Objective::Length, Objective::Bends] {
            let dp = solve_fixed(&instance, objective).unwrap();
            let oracle = oracle_solve(&instance, objective, None, &limits).unwrap();
            match (&dp.outcome, &oracle) {
                (SolveOutcome::Feasible { value, labeling }, OracleOutcome::Feasible { value: ov, .. }) => {
                    assert_eq!(
                        value, ov,
                        "trial {trial} {objective}: dp={value} oracle={ov}\n{instance:?}"
                    );
                    let report = verify(&instance, labeling, objective, None).unwrap();
                    assert!(report.admissible, "trial {trial}: {report:?}\n{instance:?}");
                }
                (SolveOutcome::Infeasible, OracleOutcome::Infeasible) => {}
                other => panic!("trial {trial} {objective}: verdicts diverge: {other:?}\n{instance:?}"),
            }
        }
    }
}

#[test]
fn added_constraints_never_help() {
    let mut rng = common::rng(202);
    for _ in 0..60 {
        let mut instance = common::random_fixed_instance(&mut rng, 5, 8);
        instance.constraints = Constraints::default();
        let n = instance.sites.len();
        let free = solve_fixed(&instance, Objective::Length).unwrap();
        if n < 2 {
            continue;
        }
        let mut tightened = instance.clone();
        if rng.gen_bool(0.5) {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n);
            if a == b {
                b = (b + 1) % n;
            }
            tightened.constraints =
                Constraints::new(vec![], vec![(SiteId(a), SiteId(b))]);
        } else {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n);
            if a == b {
                b = (b + 1) % n;
            }
            tightened.constraints =
                Constraints::new(vec![[SiteId(a), SiteId(b)].into_iter().collect()], vec![]);
        }
        let constrained = solve_fixed(&tightened, Objective::Length).unwrap();
        match (free.outcome.value(), constrained.outcome.value()) {
            (Some(a), Some(b)) => assert!(b >= a, "constraint improved the optimum"),
            (None, Some(_)) => panic!("constraint turned an infeasible instance feasible"),
            _ => {}
        }
    }
}
