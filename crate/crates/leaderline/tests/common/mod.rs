//! Shared helpers for the integration and acceptance suites: random
//! instance generators and the dense-grid machinery used to cross-check the
//! sliding discretization.

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use leaderline::model::{
    Boundary, CandId, Candidate, CandidateSource, Constraints, Instance, Objective, Side, Site,
    SiteId,
};
use leaderline::rational::{frac, rat, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random one-sided fixed-candidate instance with consistent groups (built
/// as intervals of a random permutation) and arbitrary random arcs.
pub fn random_fixed_instance(rng: &mut ChaCha8Rng, max_sites: usize, max_cands: usize) -> Instance {
    let n = rng.gen_range(1..=max_sites);
    let m = rng.gen_range(n..=max_cands.max(n));

    let mut xs: Vec<i64> = (1..=24).collect();
    xs.shuffle(rng);
    let mut ys: Vec<i64> = (-12..=12).collect();
    ys.shuffle(rng);

    let sites: Vec<Site> = (0..n)
        .map(|i| Site {
            id: SiteId(i),
            x: rat(xs[i]) + frac(rng.gen_range(0..4), 4),
            y: rat(ys[i]) + frac(rng.gen_range(0..4), 4),
            label_height: frac(rng.gen_range(1..=4), 2),
        })
        .collect();

    let candidates: Vec<Candidate> = (0..m)
        .map(|i| Candidate {
            id: CandId(i),
            side: Side::Right,
            y: rat(rng.gen_range(-14..=14)) + frac(rng.gen_range(0..4), 4),
        })
        .collect();

    // groups as intervals over one random base order stay consistent even
    // when they overlap
    let mut base: Vec<usize> = (0..n).collect();
    base.shuffle(rng);
    let k = rng.gen_range(0..=3.min(n));
    let groups: Vec<BTreeSet<SiteId>> = (0..k)
        .filter_map(|_| {
            if n < 2 {
                return None;
            }
            let len = rng.gen_range(2..=n);
            let start = rng.gen_range(0..=n - len);
            Some(base[start..start + len].iter().map(|&s| SiteId(s)).collect())
        })
        .collect();

    let r = rng.gen_range(0..=4.min(n * n));
    let order: Vec<(SiteId, SiteId)> = (0..r)
        .map(|_| (SiteId(rng.gen_range(0..n)), SiteId(rng.gen_range(0..n))))
        .filter(|(a, b)| a != b)
        .collect();

    Instance {
        boundary: Boundary {
            x_left: rat(0),
            x_right: rat(26),
            y_bottom: rat(-16),
            y_top: rat(16),
        },
        sites,
        candidates: CandidateSource::Fixed(candidates),
        constraints: Constraints::new(groups, order),
        objective: Objective::Length,
        v_min: None,
        metadata: Vec::new(),
    }
}

/// Uniform-height sliding instance whose site offsets live on a power-of-two
/// sub-lattice, so the alignment gap `d` divides nicely and the dense d/8
/// grid contains every canonical candidate. Draws are rejected until `d` is
/// one of 1/8, 1/4, 1/2 (a divisor of every lattice offset).
pub fn random_uniform_sliding_instance(rng: &mut ChaCha8Rng, max_sites: usize) -> Instance {
    use leaderline::sliding::min_gap_d;
    let allowed = [frac(1, 8), frac(1, 4), frac(1, 2)];
    loop {
        let candidate = draw_sliding_instance(rng, max_sites);
        let h = candidate.sites[0].label_height.clone();
        if let Ok(d) = min_gap_d(&candidate.sites, &h) {
            if allowed.contains(&d) {
                return candidate;
            }
        }
    }
}

fn draw_sliding_instance(rng: &mut ChaCha8Rng, max_sites: usize) -> Instance {
    let n = rng.gen_range(2..=max_sites);
    // fractional residues: distinct multiples of 1/8 from (0, 1); keeping
    // them powers-of-two denominators makes d a multiple of 1/8 that divides
    // every residue difference
    let mut residues: Vec<i64> = vec![0, 2, 4, 6, 1, 5]; // eighths
    residues.shuffle(rng);
    let mut xs: Vec<i64> = (1..=16).collect();
    xs.shuffle(rng);
    let mut levels: Vec<i64> = (0..=3).collect();
    levels.shuffle(rng);

    let sites: Vec<Site> = (0..n)
        .map(|i| Site {
            id: SiteId(i),
            x: rat(xs[i]),
            y: rat(levels[i % levels.len()]) + frac(residues[i], 8),
            label_height: rat(1),
        })
        .collect();
    // distinct y guaranteed: residues differ (mod 1) for i < len(residues)
    debug_assert!(n <= residues.len());

    let mut groups: Vec<BTreeSet<SiteId>> = Vec::new();
    if n >= 2 && rng.gen_bool(0.6) {
        let mut base: Vec<usize> = (0..n).collect();
        base.shuffle(rng);
        let len = rng.gen_range(2..=n);
        let start = rng.gen_range(0..=n - len);
        groups.push(base[start..start + len].iter().map(|&s| SiteId(s)).collect());
    }
    let r = rng.gen_range(0..=2);
    let order: Vec<(SiteId, SiteId)> = (0..r)
        .map(|_| (SiteId(rng.gen_range(0..n)), SiteId(rng.gen_range(0..n))))
        .filter(|(a, b)| a != b)
        .collect();

    Instance {
        boundary: Boundary {
            x_left: rat(0),
            x_right: rat(18),
            y_bottom: rat(-40),
            y_top: rat(44),
        },
        sites,
        candidates: CandidateSource::Sliding,
        constraints: Constraints::new(groups, order),
        objective: Objective::Bends,
        v_min: None,
        metadata: Vec::new(),
    }
}

/// Dense fixed-candidate grid over the span every canonical candidate can
/// reach: step `step`, anchored at the lowest site, extended `(n+1)h` past
/// the extreme sites, and including every site height exactly.
pub fn dense_grid(instance: &Instance, step: &Rational) -> Vec<Rational> {
    let h = instance.sites[0].label_height.clone();
    let n = rat(instance.sites.len() as i64);
    let lo = instance
        .sites
        .iter()
        .map(|s| s.y.clone())
        .min()
        .unwrap()
        - (&n + rat(1)) * &h;
    let hi = instance
        .sites
        .iter()
        .map(|s| s.y.clone())
        .max()
        .unwrap()
        + (&n + rat(1)) * &h;
    let mut set: BTreeSet<Rational> = BTreeSet::new();
    let mut y = lo.clone();
    while y <= hi {
        set.insert(y.clone());
        y += step;
    }
    for site in &instance.sites {
        set.insert(site.y.clone());
    }
    set.into_iter().collect()
}
