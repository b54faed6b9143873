//! Canonical-candidate discretization for sliding reference points with
//! uniform-height labels.
//!
//! With labels free to slide along the boundary side, the continuum of
//! positions can be replaced by a finite candidate set without losing any
//! admissible (or bend-minimal) labeling: around every site, candidates are
//! placed at all whole-label-height offsets and at those offsets shifted by
//! a small `epsilon`. The shift must be smaller than the least amount `d` by
//! which any vertical site distance misses a multiple of the label height;
//! `d = 0` (some distance is an exact multiple) is rejected rather than
//! perturbed away.
//!
//! Length-minimal labelings need one extra ingredient: without a minimum
//! vertical distance `v_min` between leaders and non-incident sites, optimal
//! solutions may fail to exist (a leader can creep arbitrarily close to a
//! site). Given `v_min`, the same construction with `v_min` in place of
//! `epsilon` discretizes the length-optimal problem exactly, and the solver
//! enforces the separation as part of admissibility.

use std::collections::BTreeSet;

use crate::model::{CandId, Candidate, CandidateSource, Instance, Objective, Side, Site};
use crate::rational::{rat, Rational};
use crate::solver::{solve_fixed, SolveOutcome, SolveReport};
use crate::Error;
use num_traits::Signed;

/// The least distance by which some vertical site distance misses a whole
/// multiple of the uniform label height `h`; zero distances are an error.
pub fn min_gap_d(sites: &[Site], h: &Rational) -> Result<Rational, Error> {
    assert!(sites.len() >= 2, "gap needs at least two sites");
    let mut best: Option<Rational> = None;
    for (i, a) in sites.iter().enumerate() {
        for b in &sites[i + 1..] {
            let diff = (&a.y - &b.y).abs();
            let q = (&diff / h).floor();
            let gap = &diff - q * h;
            if !gap.is_positive() {
                return Err(Error::ZeroGap);
            }
            match &best {
                Some(cur) if *cur <= gap => {}
                _ => best = Some(gap),
            }
        }
    }
    Ok(best.expect("at least one pair"))
}

fn offset_union(sites: &[Site], h: &Rational, shift: &Rational) -> Vec<Rational> {
    let n = sites.len() as i64;
    let mut set = BTreeSet::new();
    for site in sites {
        for i in 0..=n {
            let step = rat(i) * h;
            for base in [&site.y + &step, &site.y - &step] {
                set.insert(base.clone());
                set.insert(&base + shift);
                set.insert(&base - shift);
            }
        }
    }
    set.into_iter().collect()
}

/// Candidate heights at whole-label offsets around every site, each also
/// shifted by `±epsilon`; deduplicated and sorted. Requires `0 < ε < d`.
pub fn canonical_candidates(sites: &[Site], h: &Rational, epsilon: &Rational) -> Vec<Rational> {
    offset_union(sites, h, epsilon)
}

/// The variant used for length minimization: offsets shifted by `±v_min`.
pub fn canonical_candidates_vmin(sites: &[Site], h: &Rational, v_min: &Rational) -> Vec<Rational> {
    offset_union(sites, h, v_min)
}

/// Materializes a sliding instance as a fixed right-side instance over the
/// given candidate heights.
pub fn with_candidates(instance: &Instance, ys: Vec<Rational>, v_min: Option<Rational>) -> Instance {
    let mut fixed = instance.clone();
    fixed.candidates = CandidateSource::Fixed(
        ys.into_iter()
            .enumerate()
            .map(|(i, y)| Candidate {
                id: CandId(i),
                side: Side::Right,
                y,
            })
            .collect(),
    );
    fixed.v_min = v_min;
    fixed
}

/// Result of a sliding solve: the labeling refers into the materialized
/// candidate list also returned here.
#[derive(Debug, Clone)]
pub struct SlidingSolution {
    pub report: SolveReport,
    pub candidates: Vec<Candidate>,
    /// The fixed-candidate instance the solve ran on.
    pub discretized: Instance,
}

/// Uniform label height of the instance, or an error when heights differ.
pub fn uniform_height(instance: &Instance) -> Result<Rational, Error> {
    let mut heights = instance.sites.iter().map(|s| &s.label_height);
    let Some(first) = heights.next() else {
        return Ok(rat(1));
    };
    if heights.all(|h| h == first) {
        Ok(first.clone())
    } else {
        Err(Error::NonUniformHeights)
    }
}

/// Solves a uniform-height sliding instance by discretizing to canonical
/// candidates and running the fixed-candidate solver.
///
/// * bends / feasibility: shift `ε = d/2`; no separation requirement.
/// * length: requires `v_min`; candidates use the `v_min` shift and leaders
///   keep that distance from non-incident sites.
///
/// With a single site the gap `d` is undefined and half the label height is
/// used as the shift.
pub fn solve_sliding(
    instance: &Instance,
    objective: Objective,
    v_min: Option<&Rational>,
) -> Result<SlidingSolution, Error> {
    instance.validate()?;
    if instance.fixed_candidates().is_some() {
        return Err(Error::Malformed(
            "instance already has fixed candidates; sliding mode expected".into(),
        ));
    }
    let h = uniform_height(instance)?;
    let ys = match objective {
        Objective::Bends => {
            let shift = if instance.sites.len() >= 2 {
                min_gap_d(&instance.sites, &h)? / rat(2)
            } else {
                &h / rat(2)
            };
            canonical_candidates(&instance.sites, &h, &shift)
        }
        Objective::Length => {
            let v = v_min.ok_or(Error::MissingVmin)?;
            if !v.is_positive() {
                return Err(Error::Malformed("vmin must be positive".into()));
            }
            // d = 0 still invalidates the discretization argument
            if instance.sites.len() >= 2 {
                min_gap_d(&instance.sites, &h)?;
            }
            canonical_candidates_vmin(&instance.sites, &h, v)
        }
    };
    let discretized = with_candidates(
        instance,
        ys,
        match objective {
            Objective::Length => v_min.cloned(),
            Objective::Bends => None,
        },
    );
    let report = solve_fixed(&discretized, objective)?;
    let candidates = discretized.fixed_candidates().unwrap().to_vec();
    Ok(SlidingSolution {
        report,
        candidates,
        discretized,
    })
}

impl SlidingSolution {
    pub fn outcome(&self) -> &SolveOutcome {
        &self.report.outcome
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Boundary, Constraints, SiteId};
    use crate::rational::frac;

    fn site(id: usize, x: Rational, y: Rational) -> Site {
        Site {
            id: SiteId(id),
            x,
            y,
            label_height: rat(1),
        }
    }

    fn sliding_instance(sites: Vec<Site>) -> Instance {
        Instance {
            boundary: Boundary {
                x_left: rat(0),
                x_right: rat(20),
                y_bottom: rat(-100),
                y_top: rat(100),
            },
            sites,
            candidates: CandidateSource::Sliding,
            constraints: Constraints::default(),
            objective: Objective::Bends,
            v_min: None,
            metadata: Vec::new(),
        }
    }

    #[test]
    fn gap_formula() {
        let h = rat(1);
        let s = |id, y: Rational| site(id, rat(1 + id as i64), y);
        assert_eq!(
            min_gap_d(&[s(0, rat(0)), s(1, frac(3, 2))], &h).unwrap(),
            frac(1, 2)
        );
        assert_eq!(
            min_gap_d(
                &[s(0, rat(0)), s(1, frac(13, 10)), s(2, frac(29, 10))],
                &h
            )
            .unwrap(),
            frac(3, 10)
        );
        assert!(matches!(
            min_gap_d(&[s(0, rat(0)), s(1, rat(2))], &h),
            Err(Error::ZeroGap)
        ));
    }

    #[test]
    fn single_site_candidate_set() {
        let sites = vec![site(0, rat(1), rat(0))];
        let got = canonical_candidates(&sites, &rat(1), &frac(1, 4));
        let expected: Vec<Rational> = [
            frac(-5, 4),
            rat(-1),
            frac(-3, 4),
            frac(-1, 4),
            rat(0),
            frac(1, 4),
            frac(3, 4),
            rat(1),
            frac(5, 4),
        ]
        .to_vec();
        assert_eq!(got, expected);

        let with_vmin = canonical_candidates_vmin(&sites, &rat(1), &frac(1, 10));
        let expected: Vec<Rational> = [
            frac(-11, 10),
            rat(-1),
            frac(-9, 10),
            frac(-1, 10),
            rat(0),
            frac(1, 10),
            frac(9, 10),
            rat(1),
            frac(11, 10),
        ]
        .to_vec();
        assert_eq!(with_vmin, expected);
    }

    #[test]
    fn candidate_count_bound() {
        // duplicates collapse; the set never exceeds n * (6(n+1) - 3)
        let sites = vec![
            site(0, rat(1), rat(0)),
            site(1, rat(2), frac(5, 4)),
            site(2, rat(3), frac(5, 2)),
        ];
        let n = sites.len() as i64;
        let ys = canonical_candidates(&sites, &rat(1), &frac(1, 8));
        assert!(ys.len() as i64 <= n * (6 * (n + 1) - 3));
        let mut dedup = ys.clone();
        dedup.dedup();
        assert_eq!(dedup, ys, "sorted and deduplicated");
    }

    #[test]
    fn single_site_bends_solution_is_straight() {
        let inst = sliding_instance(vec![site(0, rat(1), rat(0))]);
        let sol = solve_sliding(&inst, Objective::Bends, None).unwrap();
        match sol.outcome() {
            SolveOutcome::Feasible { value, labeling } => {
                assert_eq!(*value, rat(0));
                let cand = labeling.candidate_of(SiteId(0)).unwrap();
                assert_eq!(sol.candidates[cand.0].y, rat(0));
            }
            SolveOutcome::Infeasible => panic!("expected feasible"),
        }
    }

    #[test]
    fn length_mode_requires_vmin() {
        let inst = sliding_instance(vec![site(0, rat(1), rat(0))]);
        assert!(matches!(
            solve_sliding(&inst, Objective::Length, None),
            Err(Error::MissingVmin)
        ));
        assert!(solve_sliding(&inst, Objective::Length, Some(&frac(1, 10))).is_ok());
    }

    #[test]
    fn epsilon_choice_does_not_change_the_verdict() {
        // feasibility and optimal bends agree for distinct valid shifts
        let sites = vec![
            site(0, rat(1), rat(0)),
            site(1, rat(2), frac(7, 4)),
            site(2, rat(3), frac(5, 8)),
        ];
        let inst = sliding_instance(sites);
        let h = rat(1);
        let d = min_gap_d(&inst.sites, &h).unwrap();
        let mut results = Vec::new();
        for div in [2i64, 4] {
            let shift = &d / rat(div);
            let ys = canonical_candidates(&inst.sites, &h, &shift);
            let fixed = with_candidates(&inst, ys, None);
            let report = solve_fixed(&fixed, Objective::Bends).unwrap();
            results.push(report.outcome.value().cloned());
        }
        assert_eq!(results[0], results[1]);
    }
}
