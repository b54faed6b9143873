//! Ground types for boundary labeling: sites, candidate reference points,
//! po-leaders, constraints, objectives, and the geometric predicates the
//! solver and verifier are built on.
//!
//! A *po-leader* connects a site to a reference point (candidate) on the left
//! or right boundary side with at most one vertical segment (at the site's x)
//! followed by one horizontal segment (at the candidate's y). Labels are open
//! rectangles of given height centered vertically on their candidate, so two
//! labels that exactly touch do not overlap.
//!
//! All values are immutable after construction and all predicates are pure;
//! everything here is safe to share across threads.

use std::collections::BTreeSet;
use std::fmt;

use crate::rational::Rational;
use crate::Error;
use num_traits::Signed;

/// Index of a site within an instance (`0..n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SiteId(pub usize);

/// Index of a candidate reference point within an instance (`0..m`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandId(pub usize);

impl fmt::Display for SiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for CandId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// A feature point to be labeled. `label_height` is the height of the open
/// rectangle attached at the site's reference point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Site {
    pub id: SiteId,
    pub x: Rational,
    pub y: Rational,
    pub label_height: Rational,
}

/// A fixed reference point on a boundary side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub id: CandId,
    pub side: Side,
    pub y: Rational,
}

/// Axis-parallel bounding box; sites live strictly inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    pub x_left: Rational,
    pub x_right: Rational,
    pub y_bottom: Rational,
    pub y_top: Rational,
}

impl Boundary {
    pub fn side_x(&self, side: Side) -> &Rational {
        match side {
            Side::Left => &self.x_left,
            Side::Right => &self.x_right,
        }
    }
}

/// A site/candidate pairing; the geometry follows from the instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Leader {
    pub site: SiteId,
    pub candidate: CandId,
}

/// Grouping constraints (site sets whose labels must be consecutive on one
/// side) and ordering constraints (`u ≼ v`: on a common side, `u`'s label
/// must not be below `v`'s).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Constraints {
    pub groups: Vec<BTreeSet<SiteId>>,
    pub order: Vec<(SiteId, SiteId)>,
}

impl Constraints {
    /// Builds a constraint set; reflexive ordering pairs are dropped here and
    /// never stored.
    pub fn new(groups: Vec<BTreeSet<SiteId>>, order: Vec<(SiteId, SiteId)>) -> Constraints {
        let order = order.into_iter().filter(|(a, b)| a != b).collect();
        Constraints { groups, order }
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty() && self.order.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    Length,
    Bends,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Length => write!(f, "length"),
            Objective::Bends => write!(f, "bends"),
        }
    }
}

/// Either an explicit candidate list or sliding reference points along the
/// boundary side(s).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateSource {
    Fixed(Vec<Candidate>),
    Sliding,
}

/// A complete labeling problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub boundary: Boundary,
    pub sites: Vec<Site>,
    pub candidates: CandidateSource,
    pub constraints: Constraints,
    pub objective: Objective,
    pub v_min: Option<Rational>,
    /// Free-form generator metadata, carried through the file format.
    pub metadata: Vec<(String, String)>,
}

impl Instance {
    pub fn site_count(&self) -> usize {
        self.sites.len()
    }

    pub fn fixed_candidates(&self) -> Option<&[Candidate]> {
        match &self.candidates {
            CandidateSource::Fixed(c) => Some(c),
            CandidateSource::Sliding => None,
        }
    }

    pub fn site(&self, id: SiteId) -> &Site {
        &self.sites[id.0]
    }

    /// True when every candidate sits on the right side (the one-sided model).
    pub fn is_one_sided(&self) -> bool {
        match &self.candidates {
            CandidateSource::Fixed(c) => c.iter().all(|c| c.side == Side::Right),
            CandidateSource::Sliding => true,
        }
    }

    /// Structural validation: boundary sanity, sites strictly inside,
    /// positive label heights, general position (pairwise distinct x and y),
    /// and constraint/site index coherence. Inputs violating general
    /// position are rejected, never perturbed.
    pub fn validate(&self) -> Result<(), Error> {
        if self.boundary.x_left >= self.boundary.x_right
            || self.boundary.y_bottom >= self.boundary.y_top
        {
            return Err(Error::Malformed("degenerate boundary box".into()));
        }
        for (i, site) in self.sites.iter().enumerate() {
            if site.id.0 != i {
                return Err(Error::Malformed(format!(
                    "site ids must be dense 0..n-1; found {} at position {i}",
                    site.id
                )));
            }
            if !site.label_height.is_positive() {
                return Err(Error::Malformed(format!(
                    "site {} has non-positive label height",
                    site.id
                )));
            }
            let inside = site.x > self.boundary.x_left
                && site.x < self.boundary.x_right
                && site.y > self.boundary.y_bottom
                && site.y < self.boundary.y_top;
            if !inside {
                return Err(Error::Malformed(format!(
                    "site {} is not strictly inside the boundary",
                    site.id
                )));
            }
        }
        let mut by_x: Vec<&Site> = self.sites.iter().collect();
        by_x.sort_by(|a, b| a.x.cmp(&b.x));
        for pair in by_x.windows(2) {
            if pair[0].x == pair[1].x {
                return Err(Error::GeneralPosition {
                    axis: 'x',
                    a: pair[0].id,
                    b: pair[1].id,
                });
            }
        }
        let mut by_y: Vec<&Site> = self.sites.iter().collect();
        by_y.sort_by(|a, b| a.y.cmp(&b.y));
        for pair in by_y.windows(2) {
            if pair[0].y == pair[1].y {
                return Err(Error::GeneralPosition {
                    axis: 'y',
                    a: pair[0].id,
                    b: pair[1].id,
                });
            }
        }
        if let CandidateSource::Fixed(cands) = &self.candidates {
            for (i, cand) in cands.iter().enumerate() {
                if cand.id.0 != i {
                    return Err(Error::Malformed(format!(
                        "candidate ids must be dense 0..m-1; found {} at position {i}",
                        cand.id
                    )));
                }
            }
        }
        let n = self.sites.len();
        for (gi, group) in self.constraints.groups.iter().enumerate() {
            if group.is_empty() {
                return Err(Error::Malformed(format!("group {gi} is empty")));
            }
            if let Some(bad) = group.iter().find(|s| s.0 >= n) {
                return Err(Error::Malformed(format!(
                    "group {gi} references unknown site {bad}"
                )));
            }
        }
        for (a, b) in &self.constraints.order {
            if a.0 >= n || b.0 >= n {
                return Err(Error::Malformed(format!(
                    "ordering constraint {a} -> {b} references an unknown site"
                )));
            }
        }
        if let Some(v) = &self.v_min {
            if !v.is_positive() {
                return Err(Error::Malformed("vmin must be positive".into()));
            }
        }
        Ok(())
    }
}

/// Manhattan length of the leader: vertical detour plus the horizontal run to
/// the boundary side.
pub fn leader_length(site: &Site, candidate: &Candidate, boundary: &Boundary) -> Rational {
    let dy = (&site.y - &candidate.y).abs();
    let dx = (boundary.side_x(candidate.side) - &site.x).abs();
    dy + dx
}

/// 0 for a straight (aligned) leader, 1 otherwise.
pub fn leader_bends(site: &Site, candidate: &Candidate) -> u32 {
    if site.y == candidate.y {
        0
    } else {
        1
    }
}

/// Open-rectangle overlap of two labels on a common side: strict inequality,
/// so touching labels are fine.
pub fn labels_overlap(c1: &Candidate, h1: &Rational, c2: &Candidate, h2: &Rational) -> bool {
    debug_assert_eq!(c1.side, c2.side);
    let gap = (&c1.y - &c2.y).abs();
    let need = (h1 + h2) / crate::rational::rat(2);
    gap < need
}

#[derive(Debug, Clone)]
struct HSeg {
    y: Rational,
    x0: Rational,
    x1: Rational,
}

#[derive(Debug, Clone)]
struct VSeg {
    x: Rational,
    y0: Rational,
    y1: Rational,
}

fn leader_segments(site: &Site, candidate: &Candidate, boundary: &Boundary) -> (Option<VSeg>, HSeg) {
    let vertical = if site.y == candidate.y {
        None
    } else {
        let (y0, y1) = if site.y < candidate.y {
            (site.y.clone(), candidate.y.clone())
        } else {
            (candidate.y.clone(), site.y.clone())
        };
        Some(VSeg {
            x: site.x.clone(),
            y0,
            y1,
        })
    };
    let side_x = boundary.side_x(candidate.side).clone();
    let (x0, x1) = if site.x < side_x {
        (site.x.clone(), side_x)
    } else {
        (side_x, site.x.clone())
    };
    let horizontal = HSeg {
        y: candidate.y.clone(),
        x0,
        x1,
    };
    (vertical, horizontal)
}

/// Interior crossing of a vertical and a horizontal segment. Touching at a
/// segment endpoint does not count; endpoint contacts at sites are the
/// business of [`leader_crosses_site`].
fn crosses(v: &VSeg, h: &HSeg) -> bool {
    h.x0 < v.x && v.x < h.x1 && v.y0 < h.y && h.y < v.y1
}

fn h_h_overlap(a: &HSeg, b: &HSeg) -> bool {
    a.y == b.y && a.x0.clone().max(b.x0.clone()) < a.x1.clone().min(b.x1.clone())
}

fn v_v_overlap(a: &VSeg, b: &VSeg) -> bool {
    a.x == b.x && a.y0.clone().max(b.y0.clone()) < a.y1.clone().min(b.y1.clone())
}

/// True when the two leaders properly intersect: an interior crossing of any
/// of their segments, or a collinear interior overlap (the latter cannot
/// arise from well-formed instances but is reported rather than ignored).
pub fn leaders_conflict(
    s1: &Site,
    c1: &Candidate,
    s2: &Site,
    c2: &Candidate,
    boundary: &Boundary,
) -> bool {
    let (v1, h1) = leader_segments(s1, c1, boundary);
    let (v2, h2) = leader_segments(s2, c2, boundary);
    if let Some(v1) = &v1 {
        if crosses(v1, &h2) {
            return true;
        }
        if let Some(v2) = &v2 {
            if v_v_overlap(v1, v2) {
                return true;
            }
        }
    }
    if let Some(v2) = &v2 {
        if crosses(v2, &h1) {
            return true;
        }
    }
    h_h_overlap(&h1, &h2)
}

/// True when `other` lies on the leader's horizontal run: same y as the
/// candidate and strictly between the site and its boundary side. The
/// vertical segment cannot contain another site in a general-position
/// instance.
pub fn leader_crosses_site(
    site: &Site,
    candidate: &Candidate,
    other: &Site,
    boundary: &Boundary,
) -> bool {
    if other.y != candidate.y {
        return false;
    }
    let side_x = boundary.side_x(candidate.side);
    match candidate.side {
        Side::Right => other.x > site.x && other.x < *side_x,
        Side::Left => other.x < site.x && other.x > *side_x,
    }
}

/// Per-leader objective contribution.
pub fn leader_cost(
    site: &Site,
    candidate: &Candidate,
    boundary: &Boundary,
    objective: Objective,
) -> Rational {
    match objective {
        Objective::Length => leader_length(site, candidate, boundary),
        Objective::Bends => crate::rational::rat(leader_bends(site, candidate) as i64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn site(id: usize, x: i64, y: i64) -> Site {
        Site {
            id: SiteId(id),
            x: rat(x),
            y: rat(y),
            label_height: rat(1),
        }
    }

    fn site_q(id: usize, x: Rational, y: Rational) -> Site {
        Site {
            id: SiteId(id),
            x,
            y,
            label_height: rat(1),
        }
    }

    fn cand(id: usize, side: Side, y: Rational) -> Candidate {
        Candidate {
            id: CandId(id),
            side,
            y,
        }
    }

    fn boundary(x_left: i64, x_right: i64) -> Boundary {
        Boundary {
            x_left: rat(x_left),
            x_right: rat(x_right),
            y_bottom: rat(-100),
            y_top: rat(100),
        }
    }

    #[test]
    fn leader_length_cases() {
        let b = boundary(0, 10);
        let s = site(0, 3, 5);
        assert_eq!(leader_length(&s, &cand(0, Side::Right, rat(5)), &b), rat(7));
        assert_eq!(
            leader_length(&s, &cand(0, Side::Right, rat(9)), &b),
            rat(11)
        );
        assert_eq!(leader_length(&s, &cand(0, Side::Left, rat(2)), &b), rat(6));
    }

    #[test]
    fn leader_bend_cases() {
        let s = site(0, 3, 5);
        assert_eq!(leader_bends(&s, &cand(0, Side::Right, rat(5))), 0);
        assert_eq!(
            leader_bends(&s, &cand(0, Side::Right, rat(5) + frac(1, 10000))),
            1
        );
    }

    #[test]
    fn length_dominates_horizontal_distance() {
        // length >= horizontal distance, equality exactly for straight leaders
        let b = boundary(0, 10);
        for (x, y, cy) in [(3, 5, 5), (3, 5, 9), (1, -2, 3), (9, 0, 0)] {
            let s = site(0, x, y);
            let c = cand(0, Side::Right, rat(cy));
            let horiz = rat(10 - x);
            let len = leader_length(&s, &c, &b);
            assert!(len >= horiz);
            assert_eq!(len == horiz, leader_bends(&s, &c) == 0);
        }
    }

    #[test]
    fn label_overlap_is_open() {
        let a = cand(0, Side::Right, rat(0));
        let b = cand(1, Side::Right, rat(1));
        assert!(!labels_overlap(&a, &rat(1), &b, &rat(1)));
        let c = cand(2, Side::Right, frac(9, 10));
        assert!(labels_overlap(&a, &rat(1), &c, &rat(1)));
        let d = cand(3, Side::Right, rat(3));
        assert!(!labels_overlap(&a, &rat(2), &d, &rat(2)));
        // symmetry
        assert_eq!(
            labels_overlap(&a, &rat(1), &c, &rat(1)),
            labels_overlap(&c, &rat(1), &a, &rat(1))
        );
    }

    #[test]
    fn site_on_horizontal_run() {
        let b = boundary(0, 10);
        let s = site(0, 1, 3);
        let c = cand(0, Side::Right, rat(2));
        assert!(leader_crosses_site(&s, &c, &site(1, 3, 2), &b));
        assert!(!leader_crosses_site(
            &s,
            &c,
            &site_q(1, frac(1, 2), rat(2)),
            &b
        ));
        assert!(!leader_crosses_site(
            &s,
            &c,
            &site_q(1, rat(3), frac(21, 10)),
            &b
        ));
    }

    /// Independent oracle: decompose both leaders into explicit segments and
    /// test proper intersection with generic orientation arithmetic instead
    /// of the axis-aligned shortcuts used by the implementation.
    mod segment_oracle {
        use super::*;

        #[derive(Clone)]
        pub struct Seg {
            pub ax: Rational,
            pub ay: Rational,
            pub bx: Rational,
            pub by: Rational,
        }

        fn orient(px: &Rational, py: &Rational, qx: &Rational, qy: &Rational, rx: &Rational, ry: &Rational) -> i32 {
            let v = (qx - px) * (ry - py) - (qy - py) * (rx - px);
            match v.cmp(&rat(0)) {
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => 1,
            }
        }

        fn on_open_segment(s: &Seg, px: &Rational, py: &Rational) -> bool {
            if orient(&s.ax, &s.ay, &s.bx, &s.by, px, py) != 0 {
                return false;
            }
            let min_x = s.ax.clone().min(s.bx.clone());
            let max_x = s.ax.clone().max(s.bx.clone());
            let min_y = s.ay.clone().min(s.by.clone());
            let max_y = s.ay.clone().max(s.by.clone());
            let strict_x = *px > min_x && *px < max_x;
            let strict_y = *py > min_y && *py < max_y;
            if s.ax == s.bx {
                strict_y
            } else if s.ay == s.by {
                strict_x
            } else {
                strict_x && strict_y
            }
        }

        /// Interior intersection of two segments: a transversal crossing with
        /// both intersection parameters strictly interior, or a collinear
        /// overlap of positive length.
        pub fn properly_intersect(s: &Seg, t: &Seg) -> bool {
            let o1 = orient(&s.ax, &s.ay, &s.bx, &s.by, &t.ax, &t.ay);
            let o2 = orient(&s.ax, &s.ay, &s.bx, &s.by, &t.bx, &t.by);
            let o3 = orient(&t.ax, &t.ay, &t.bx, &t.by, &s.ax, &s.ay);
            let o4 = orient(&t.ax, &t.ay, &t.bx, &t.by, &s.bx, &s.by);
            if o1 * o2 < 0 && o3 * o4 < 0 {
                return true;
            }
            if o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0 {
                // collinear: positive-length interior overlap
                let mids = |seg: &Seg| {
                    (
                        (&seg.ax + &seg.bx) / rat(2),
                        (&seg.ay + &seg.by) / rat(2),
                    )
                };
                let (mx, my) = mids(t);
                let (nx, ny) = mids(s);
                return on_open_segment(s, &t.ax, &t.ay)
                    || on_open_segment(s, &t.bx, &t.by)
                    || on_open_segment(t, &s.ax, &s.ay)
                    || on_open_segment(t, &s.bx, &s.by)
                    || (on_open_segment(s, &mx, &my) && on_open_segment(t, &nx, &ny));
            }
            false
        }

        pub fn leader_segs(site: &Site, cand: &Candidate, boundary: &Boundary) -> Vec<Seg> {
            let mut out = Vec::new();
            if site.y != cand.y {
                out.push(Seg {
                    ax: site.x.clone(),
                    ay: site.y.clone(),
                    bx: site.x.clone(),
                    by: cand.y.clone(),
                });
            }
            out.push(Seg {
                ax: site.x.clone(),
                ay: cand.y.clone(),
                bx: boundary.side_x(cand.side).clone(),
                by: cand.y.clone(),
            });
            out
        }
    }

    fn oracle_conflict(s1: &Site, c1: &Candidate, s2: &Site, c2: &Candidate, b: &Boundary) -> bool {
        let segs1 = segment_oracle::leader_segs(s1, c1, b);
        let segs2 = segment_oracle::leader_segs(s2, c2, b);
        segs1
            .iter()
            .any(|a| segs2.iter().any(|c| segment_oracle::properly_intersect(a, c)))
    }

    #[test]
    fn conflict_examples_match_oracle() {
        let b = boundary(0, 5);
        // endpoint touch at the other site is not a leader-leader conflict
        let s = site(0, 1, 1);
        let c = cand(0, Side::Right, rat(2));
        let s2 = site(1, 2, 2);
        let c2 = cand(1, Side::Right, rat(1));
        assert_eq!(leaders_conflict(&s, &c, &s2, &c2, &b), false);
        assert_eq!(oracle_conflict(&s, &c, &s2, &c2, &b), false);

        let s = site(0, 1, 3);
        let c = cand(0, Side::Right, rat(1));
        let s2 = site(1, 2, 2);
        let c2 = cand(1, Side::Right, rat(4));
        assert_eq!(leaders_conflict(&s, &c, &s2, &c2, &b), false);
        assert_eq!(oracle_conflict(&s, &c, &s2, &c2, &b), false);

        let s = site(0, 1, 1);
        let c = cand(0, Side::Right, rat(3));
        let s2 = site(1, 2, 2);
        let c2 = cand(1, Side::Right, rat(0));
        assert_eq!(leaders_conflict(&s, &c, &s2, &c2, &b), false);
        assert_eq!(oracle_conflict(&s, &c, &s2, &c2, &b), false);

        // proper crossing at (2, 1.5)
        let c = cand(0, Side::Right, frac(3, 2));
        assert_eq!(leaders_conflict(&s, &c, &s2, &c2, &b), true);
        assert_eq!(oracle_conflict(&s, &c, &s2, &c2, &b), true);
    }

    #[test]
    fn conflict_agrees_with_oracle_on_random_configurations() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let b = Boundary {
            x_left: rat(0),
            x_right: rat(16),
            y_bottom: rat(-40),
            y_top: rat(40),
        };
        for trial in 0..1000 {
            fn coord(rng: &mut rand_chacha::ChaCha8Rng) -> Rational {
                frac(rng.gen_range(-32i64..=32), [1, 2, 4][rng.gen_range(0..3)])
            }
            let x1 = frac(rng.gen_range(1i64..=60), 4);
            let mut x2 = frac(rng.gen_range(1i64..=60), 4);
            if x2 == x1 {
                x2 += frac(1, 8);
            }
            let y1 = coord(&mut rng);
            let mut y2 = coord(&mut rng);
            if y2 == y1 {
                y2 += frac(1, 8);
            }
            let s1 = site_q(0, x1, y1);
            let s2 = site_q(1, x2, y2);
            let sides = [Side::Left, Side::Right];
            let c1 = cand(0, sides[rng.gen_range(0..2)], coord(&mut rng));
            let c2 = cand(1, sides[rng.gen_range(0..2)], coord(&mut rng));
            let fast = leaders_conflict(&s1, &c1, &s2, &c2, &b);
            let slow = oracle_conflict(&s1, &c1, &s2, &c2, &b);
            assert_eq!(fast, slow, "trial {trial}: {s1:?} {c1:?} {s2:?} {c2:?}");
            // symmetry
            assert_eq!(fast, leaders_conflict(&s2, &c2, &s1, &c1, &b));
            // the site-crossing predicate agrees with point-on-open-segment
            let on_seg = segment_oracle::leader_segs(&s1, &c1, &b).iter().any(|seg| {
                segment_oracle::properly_intersect(
                    seg,
                    &segment_oracle::Seg {
                        ax: s2.x.clone(),
                        ay: s2.y.clone(),
                        bx: s2.x.clone(),
                        by: s2.y.clone(),
                    },
                )
            });
            // degenerate segments never properly intersect; use direct check instead
            let _ = on_seg;
            let hits = leader_crosses_site(&s1, &c1, &s2, &b);
            let oracle_hits = {
                // s2 is on the horizontal part iff collinear and strictly inside
                let side_x = b.side_x(c1.side).clone();
                let (lo, hi) = if s1.x < side_x {
                    (s1.x.clone(), side_x)
                } else {
                    (side_x, s1.x.clone())
                };
                s2.y == c1.y && s2.x > lo && s2.x < hi
            };
            assert_eq!(hits, oracle_hits);
        }
    }

    #[test]
    fn validation_rejects_shared_coordinates() {
        let instance = Instance {
            boundary: boundary(0, 10),
            sites: vec![site(0, 1, 1), site(1, 1, 2)],
            candidates: CandidateSource::Sliding,
            constraints: Constraints::default(),
            objective: Objective::Length,
            v_min: None,
            metadata: Vec::new(),
        };
        match instance.validate() {
            Err(Error::GeneralPosition { axis: 'x', a, b }) => {
                assert_eq!((a, b), (SiteId(0), SiteId(1)));
            }
            other => panic!("expected general-position error, got {other:?}"),
        }
    }

    #[test]
    fn reflexive_order_pairs_are_stripped() {
        let c = Constraints::new(vec![], vec![(SiteId(1), SiteId(1)), (SiteId(0), SiteId(1))]);
        assert_eq!(c.order, vec![(SiteId(0), SiteId(1))]);
    }
}
