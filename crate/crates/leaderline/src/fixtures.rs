//! Seeded generators for benchmark and test fixtures: city-map-like
//! one-sided instances with overlapping groups and a candidate row spaced at
//! least one label height apart (twice as many candidates as sites).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

use crate::model::{
    Boundary, CandId, Candidate, CandidateSource, Constraints, Instance, Objective, Side, Site,
    SiteId,
};
use crate::rational::{frac, rat};

#[derive(Debug, Clone)]
pub struct CitiesLikeConfig {
    pub sites: usize,
    pub seed: u64,
    /// Upper bound on the number of (possibly overlapping) groups.
    pub groups: usize,
    /// Number of ordering constraints between group representatives.
    pub orders: usize,
}

impl Default for CitiesLikeConfig {
    fn default() -> Self {
        CitiesLikeConfig {
            sites: 25,
            seed: 1,
            groups: 13,
            orders: 4,
        }
    }
}

/// A one-sided instance shaped like a labeled city map: `n` scattered sites
/// with uniform label height 20, `m = 2n` right-side candidates spaced at
/// least one label height apart, and groups formed from vertical runs of
/// neighboring sites (so they can overlap but stay consistent).
pub fn cities_like(config: &CitiesLikeConfig) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.sites;
    let m = 2 * n;
    let h = 20i64;
    let height = (m as i64) * (h + 2) + h;
    let width = height; // square map

    // distinct integer coordinates, jittered by quarters to stay irregular
    let mut xs: Vec<i64> = (1..width / 4).collect();
    let mut ys: Vec<i64> = (1..height / 4).collect();
    xs.shuffle(&mut rng);
    ys.shuffle(&mut rng);
    let sites: Vec<Site> = (0..n)
        .map(|i| Site {
            id: SiteId(i),
            x: rat(xs[i] * 4) + frac(rng.gen_range(0..4), 4),
            y: rat(ys[i] * 4) + frac(rng.gen_range(0..4), 4),
            label_height: rat(h),
        })
        .collect();

    // candidates on the right, h apart with slack rows between
    let candidates: Vec<Candidate> = (0..m)
        .map(|i| Candidate {
            id: CandId(i),
            side: Side::Right,
            y: rat((i as i64) * (h + 2) + h / 2) + frac(rng.gen_range(0..2), 2),
        })
        .collect();

    // groups: intervals in the vertical order of the sites, like regions on
    // a map; intervals may overlap, which keeps the family consistent
    let mut order_of_sites: Vec<usize> = (0..n).collect();
    order_of_sites.sort_by(|&a, &b| sites[a].y.cmp(&sites[b].y));
    let mut groups: Vec<BTreeSet<SiteId>> = Vec::new();
    for _ in 0..config.groups {
        if n < 2 {
            break;
        }
        let len = rng.gen_range(2..=4.min(n));
        let start = rng.gen_range(0..=n - len);
        let group: BTreeSet<SiteId> = order_of_sites[start..start + len]
            .iter()
            .map(|&s| SiteId(s))
            .collect();
        groups.push(group);
    }

    // ordering constraints aligned with the vertical order (top label above
    // lower label), between random representatives
    let mut order = Vec::new();
    for _ in 0..config.orders {
        if n < 2 {
            break;
        }
        let a = rng.gen_range(0..n - 1);
        let b = rng.gen_range(a + 1..n);
        // site higher on the map keeps its label above
        order.push((SiteId(order_of_sites[b]), SiteId(order_of_sites[a])));
    }

    Instance {
        boundary: Boundary {
            x_left: rat(0),
            x_right: rat(width),
            y_bottom: rat(0),
            y_top: rat(height),
        },
        sites,
        candidates: CandidateSource::Fixed(candidates),
        constraints: Constraints::new(groups, order),
        objective: Objective::Length,
        v_min: None,
        metadata: vec![("family".into(), "cities-like".into())],
    }
}
