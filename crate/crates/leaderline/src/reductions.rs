//! Constructive generators for two hardness families, used as correctness
//! fixtures and stress generators.
//!
//! * [`gen_partition_instance`]: a number-partitioning input becomes a
//!   one-sided *sliding* instance with non-uniform label heights. Three
//!   five-site "blocks" pin an arrangement of labels that leaves two windows
//!   on the boundary, each exactly half the total element-label height tall;
//!   the element labels fit iff the weights admit an equal-sum split.
//! * [`gen_one_in_three_instance`]: a positive 1-in-3 SAT formula becomes a
//!   *two-sided* instance with unit labels and fixed candidates. Blocker
//!   gadgets with a unique admissible labeling slice the boundary; ordering
//!   constraints between a variable's site and its clause occurrences can
//!   only be satisfied by labeling them on opposite sides, which transmits
//!   the truth assignment. A clause slice offers one left and two right
//!   candidates, so exactly one occurrence per clause is "true".
//!
//! Both generators emit instances in general position and write the standard
//! instance format via [`crate::format`].

use std::collections::BTreeSet;

use crate::model::{
    Boundary, CandId, Candidate, CandidateSource, Constraints, Instance, Objective, Side, Site,
    SiteId,
};
use crate::rational::{frac, rat, Rational};
use crate::Error;

/// A positive-weight multiset whose equal-sum splittability is encoded by
/// [`gen_partition_instance`].
#[derive(Debug, Clone)]
pub struct PartitionInput {
    pub weights: Vec<u64>,
}

impl PartitionInput {
    /// Requires at least two positive weights with an even sum of at least 12
    /// (so each half is at least 6; smaller block labels would degenerate).
    pub fn new(weights: Vec<u64>) -> Result<PartitionInput, Error> {
        if weights.len() < 2 {
            return Err(Error::Malformed("need at least two weights".into()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::Malformed("weights must be positive".into()));
        }
        let sum: u64 = weights.iter().sum();
        if sum % 2 != 0 {
            return Err(Error::Malformed("weight sum must be even".into()));
        }
        if sum / 2 < 6 {
            return Err(Error::Malformed("half the weight sum must be at least 6".into()));
        }
        Ok(PartitionInput { weights })
    }

    pub fn half_sum(&self) -> u64 {
        self.weights.iter().sum::<u64>() / 2
    }
}

/// Brute force over all subsets: does an equal-sum split exist?
pub fn equal_split_exists(weights: &[u64]) -> bool {
    let total: u64 = weights.iter().sum();
    if total % 2 != 0 {
        return false;
    }
    let target = total / 2;
    let n = weights.len();
    (0..1u64 << n).any(|mask| {
        let sum: u64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| weights[i]).sum();
        sum == target
    })
}

/// Options for the partition generator.
#[derive(Debug, Clone, Copy, Default)]
pub struct PartitionOptions {
    /// Model the blocks with ordering constraints instead of groups.
    pub ordering_blocks: bool,
    /// Scale all coordinates and heights by `2N` so everything is integral.
    pub integer_scale: bool,
}

/// Builds the one-sided sliding instance for a partition input: `N` element
/// sites plus three blocks of five sites each (`N + 15` sites total).
pub fn gen_partition_instance(
    input: &PartitionInput,
    options: PartitionOptions,
) -> Result<Instance, Error> {
    let n = input.weights.len() as i64;
    let a = input.half_sum() as i64;
    let eps = frac(1, 2 * n);
    let half = n / 2;

    let mut sites = Vec::new();
    let push_site = |x: Rational, y: Rational, h: Rational, sites: &mut Vec<Site>| {
        let id = SiteId(sites.len());
        sites.push(Site {
            id,
            x,
            y,
            label_height: h,
        });
    };

    // element sites, fanned around the center height by multiples of eps
    let center = frac(5 * a, 2);
    for i in 1..=n {
        let y = if i <= half {
            &center - &eps * rat(half - i + 2)
        } else {
            &center + &eps * rat(i - half + 1)
        };
        push_site(
            rat(8 + i),
            y,
            rat(input.weights[(i - 1) as usize] as i64),
            &mut sites,
        );
    }

    // block label heights: 1, floor((A-4)/2), 2 or 3, floor((A-4)/2), 1 — they sum to A
    let h_outer = rat(1);
    let h_mid = rat((a - 4) / 2);
    let h_center = if a % 2 == 0 { rat(2) } else { rat(3) };
    let block_heights = [
        h_outer.clone(),
        h_mid.clone(),
        h_center.clone(),
        h_mid.clone(),
        h_outer.clone(),
    ];

    let mut groups: Vec<BTreeSet<SiteId>> = Vec::new();
    let mut order: Vec<(SiteId, SiteId)> = Vec::new();
    let anchors = [
        (rat(9 + n), frac(5 * a, 2)), // fences the elements from the right
        (rat(1), frac(9 * a, 2)),     // top window ceiling
        (rat(5), frac(a, 2)),         // bottom window floor
    ];
    for (x_b, y_b) in anchors {
        let base = sites.len();
        let two = rat(2);
        let b1_y = &y_b + (&block_heights[2] + &block_heights[1]) / &two + &eps;
        let b5_y = &y_b - (&block_heights[2] + &block_heights[3]) / &two - &eps;
        let coords = [
            (&x_b + rat(2) - &eps, b1_y),
            (x_b.clone(), &y_b - &eps),
            (&x_b + rat(3), y_b.clone()),
            (&x_b + rat(1), &y_b + &eps),
            (&x_b + rat(2) + &eps, b5_y),
        ];
        for (k, (x, y)) in coords.into_iter().enumerate() {
            push_site(x, y, block_heights[k].clone(), &mut sites);
        }
        if options.ordering_blocks {
            for k in 0..4 {
                order.push((SiteId(base + k), SiteId(base + k + 1)));
            }
        } else {
            for window in [[0, 1, 2], [1, 2, 3], [2, 3, 4]] {
                groups.push(window.iter().map(|&k| SiteId(base + k)).collect());
            }
        }
    }

    let mut instance = Instance {
        boundary: Boundary {
            x_left: rat(0),
            x_right: rat(13 + n),
            y_bottom: rat(-1),
            y_top: rat(5 * a + 1),
        },
        sites,
        candidates: CandidateSource::Sliding,
        constraints: Constraints::new(groups, order),
        objective: Objective::Bends,
        v_min: None,
        metadata: vec![
            (
                "block-grouping-constraints".into(),
                if options.ordering_blocks { "0".into() } else { "9".into() },
            ),
            // an alternative accounting of the same construction counts 18
            ("block-grouping-constraints-alt".into(), "18".into()),
            (
                "block-ordering-constraints".into(),
                if options.ordering_blocks { "12".into() } else { "0".into() },
            ),
        ],
    };

    if options.integer_scale {
        let factor = rat(2 * n);
        for site in &mut instance.sites {
            site.x = &site.x * &factor;
            site.y = &site.y * &factor;
            site.label_height = &site.label_height * &factor;
        }
        instance.boundary.x_left = &instance.boundary.x_left * &factor;
        instance.boundary.x_right = &instance.boundary.x_right * &factor;
        instance.boundary.y_bottom = &instance.boundary.y_bottom * &factor;
        instance.boundary.y_top = &instance.boundary.y_top * &factor;
    }

    instance.validate()?;
    Ok(instance)
}

/// A positive 1-in-3 SAT formula: clauses of exactly three distinct,
/// non-negated variables; satisfied iff exactly one literal per clause is
/// true.
#[derive(Debug, Clone)]
pub struct OneInThreeFormula {
    pub vars: usize,
    pub clauses: Vec<[usize; 3]>,
}

impl OneInThreeFormula {
    pub fn new(vars: usize, clauses: Vec<[usize; 3]>) -> Result<OneInThreeFormula, Error> {
        for clause in &clauses {
            let mut sorted = *clause;
            sorted.sort_unstable();
            if sorted[0] == sorted[1] || sorted[1] == sorted[2] {
                return Err(Error::Malformed("clause variables must be distinct".into()));
            }
            if sorted[2] >= vars {
                return Err(Error::Malformed("clause references an unknown variable".into()));
            }
        }
        let clauses = clauses
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        Ok(OneInThreeFormula { vars, clauses })
    }

    /// Right boundary coordinate; even by construction.
    pub fn width(&self) -> i64 {
        8 * self.clauses.len() as i64 + 2 * self.vars as i64 + 8
    }
}

/// Brute force over all assignments: is some assignment exactly-one-true in
/// every clause?
pub fn one_in_three_satisfiable(formula: &OneInThreeFormula) -> bool {
    let n = formula.vars;
    (0..1u64 << n).any(|mask| {
        formula.clauses.iter().all(|clause| {
            clause.iter().filter(|&&v| mask >> v & 1 == 1).count() == 1
        })
    })
}

/// An eight-site gadget with four grouping and four ordering constraints
/// whose admissible labeling is unique. Placed between boundary slices, its
/// two outermost leaders block all other leaders from passing.
#[derive(Debug, Clone)]
pub struct BlockerGadget {
    /// `[s1, s2, s3, s4, s5, s6, s_a, s_b]`, unit label heights
    pub sites: Vec<(Rational, Rational)>,
    pub right_candidates: Vec<Rational>,
    pub left_candidates: Vec<Rational>,
    /// local site indices
    pub groups: Vec<Vec<usize>>,
    pub order: Vec<(usize, usize)>,
}

/// Builds a blocker anchored at `(x_b, y_b)` for an instance with `m`
/// clauses and right boundary `x_r`. `shear` nudges the two site triples
/// horizontally; the full construction uses a distinct shear per blocker to
/// keep all x-coordinates pairwise distinct.
pub fn gen_blocker(x_b: i64, y_b: i64, m: i64, x_r: i64, shear: Rational) -> BlockerGadget {
    let y = |d: i64| rat(y_b + d);
    let sites = vec![
        (rat(x_b + m + 1) + &shear, y(2)),
        (rat(x_b + m + 3) + &shear, y(3)),
        (rat(x_b + m + 2) + &shear, y(4)),
        (rat(x_r - x_b - m - 1) - &shear, y(9)),
        (rat(x_r - x_b - m - 3) - &shear, y(8)),
        (rat(x_r - x_b - m - 2) - &shear, y(7)),
        (rat(x_b), y(11)),
        (rat(x_r - x_b), y(0)),
    ];
    BlockerGadget {
        sites,
        right_candidates: vec![y(1), y(3), y(5), y(11)],
        left_candidates: vec![y(0), y(6), y(8), y(10)],
        groups: vec![
            vec![0, 1, 2],
            vec![3, 4, 5],
            vec![0, 1, 2, 6],
            vec![3, 4, 5, 7],
        ],
        order: vec![(0, 1), (1, 2), (3, 4), (4, 5)],
    }
}

/// Wraps a blocker into a standalone two-sided instance, for isolation
/// tests.
pub fn blocker_instance(gadget: &BlockerGadget, x_r: i64) -> Result<Instance, Error> {
    let mut y_lo = gadget.sites[0].1.clone();
    let mut y_hi = gadget.sites[0].1.clone();
    for (_, y) in &gadget.sites {
        if *y < y_lo {
            y_lo = y.clone();
        }
        if *y > y_hi {
            y_hi = y.clone();
        }
    }
    let sites = gadget
        .sites
        .iter()
        .enumerate()
        .map(|(i, (x, y))| Site {
            id: SiteId(i),
            x: x.clone(),
            y: y.clone(),
            label_height: rat(1),
        })
        .collect();
    let mut candidates = Vec::new();
    for y in &gadget.right_candidates {
        candidates.push(Candidate {
            id: CandId(candidates.len()),
            side: Side::Right,
            y: y.clone(),
        });
    }
    for y in &gadget.left_candidates {
        candidates.push(Candidate {
            id: CandId(candidates.len()),
            side: Side::Left,
            y: y.clone(),
        });
    }
    let instance = Instance {
        boundary: Boundary {
            x_left: rat(0),
            x_right: rat(x_r),
            y_bottom: y_lo - rat(1),
            y_top: y_hi + rat(1),
        },
        sites,
        candidates: CandidateSource::Fixed(candidates),
        constraints: Constraints::new(
            gadget
                .groups
                .iter()
                .map(|g| g.iter().map(|&i| SiteId(i)).collect())
                .collect(),
            gadget.order.iter().map(|&(a, b)| (SiteId(a), SiteId(b))).collect(),
        ),
        objective: Objective::Bends,
        v_min: None,
        metadata: Vec::new(),
    };
    instance.validate()?;
    Ok(instance)
}

/// Builds the two-sided unit-height instance for a formula: `2N` variable
/// sites, and per clause a blocker (8 sites) plus a clause gadget (3 sites),
/// with matching candidate counts.
pub fn gen_one_in_three_instance(formula: &OneInThreeFormula) -> Result<Instance, Error> {
    if formula.vars == 0 {
        return Err(Error::Malformed("formula needs at least one variable".into()));
    }
    let n = formula.vars as i64;
    let m = formula.clauses.len() as i64;
    let x_r = formula.width();
    let mid = x_r / 2;

    let mut sites: Vec<Site> = Vec::new();
    let mut candidates: Vec<Candidate> = Vec::new();
    let mut groups: Vec<BTreeSet<SiteId>> = Vec::new();
    let mut order: Vec<(SiteId, SiteId)> = Vec::new();

    let add_site = |x: Rational, y: Rational, sites: &mut Vec<Site>| -> SiteId {
        let id = SiteId(sites.len());
        sites.push(Site {
            id,
            x,
            y,
            label_height: rat(1),
        });
        id
    };
    let add_cand = |side: Side, y: Rational, candidates: &mut Vec<Candidate>| -> CandId {
        let id = CandId(candidates.len());
        candidates.push(Candidate { id, side, y });
        id
    };

    // variable slice: per variable a left candidate below and a right
    // candidate above its two sites; the twin blocks the unused side
    let mut var_site = Vec::new(); // s_i
    let mut twin_site = Vec::new(); // s_i'
    for i in 1..=n {
        add_cand(Side::Left, rat(4 * i - 3), &mut candidates);
        add_cand(Side::Right, rat(4 * i), &mut candidates);
        var_site.push(add_site(rat(mid - 2 * m - i), rat(4 * i - 2), &mut sites));
        twin_site.push(add_site(rat(mid + 2 * m + i), rat(4 * i - 1), &mut sites));
    }
    // later variables are labeled above earlier ones, twins included
    for i in 0..(n as usize).saturating_sub(1) {
        order.push((var_site[i + 1], var_site[i]));
        order.push((twin_site[i + 1], var_site[i]));
        order.push((var_site[i + 1], twin_site[i]));
        order.push((twin_site[i + 1], twin_site[i]));
    }

    let mut prev_top_site: SiteId = *twin_site.last().expect("at least one variable");
    for (j, clause) in formula.clauses.iter().enumerate() {
        let j1 = (j + 1) as i64;
        let y_b = 4 * n + 18 * (j1 - 1) + 1;
        let shear = frac(j as i64, 4 * m);
        let gadget = gen_blocker(j1, y_b, m, x_r, shear);
        let base = sites.len();
        for (x, y) in &gadget.sites {
            add_site(x.clone(), y.clone(), &mut sites);
        }
        for y in &gadget.right_candidates {
            add_cand(Side::Right, y.clone(), &mut candidates);
        }
        for y in &gadget.left_candidates {
            add_cand(Side::Left, y.clone(), &mut candidates);
        }
        for group in &gadget.groups {
            groups.push(group.iter().map(|&k| SiteId(base + k)).collect());
        }
        for &(a, b) in &gadget.order {
            order.push((SiteId(base + a), SiteId(base + b)));
        }
        // every blocker site is labeled above the top site of the slice below
        for k in 0..8 {
            order.push((SiteId(base + k), prev_top_site));
        }
        let blocker_top = SiteId(base + 6); // s_a

        // clause gadget: one left candidate below the three sites, two right
        // candidates above them
        let y_j = 4 * n + 18 * (j1 - 1) + 13;
        add_cand(Side::Left, rat(y_j), &mut candidates);
        add_cand(Side::Right, rat(y_j + 4), &mut candidates);
        add_cand(Side::Right, rat(y_j + 5), &mut candidates);
        let d1 = add_site(rat(mid - m + (j1 - 1)), rat(y_j + 1), &mut sites);
        let d2 = add_site(rat(mid + (j1 - 1)), rat(y_j + 2), &mut sites);
        let d3 = add_site(rat(mid + m + (j1 - 1)), rat(y_j + 3), &mut sites);

        // a variable site must be labeled above its clause occurrences —
        // possible only on the opposite side, which transmits the assignment
        for (&var, &occurrence) in clause.iter().zip([d1, d2, d3].iter()) {
            order.push((var_site[var], occurrence));
        }
        // clause sites sit above their blocker
        for &d in &[d1, d2, d3] {
            order.push((d, blocker_top));
        }
        prev_top_site = d3;
    }

    let instance = Instance {
        boundary: Boundary {
            x_left: rat(0),
            x_right: rat(x_r),
            y_bottom: rat(0),
            y_top: rat(4 * n + 18 * m + 1),
        },
        sites,
        candidates: CandidateSource::Fixed(candidates),
        constraints: Constraints::new(groups, order),
        objective: Objective::Bends,
        v_min: None,
        metadata: vec![("family".into(), "one-in-three".into())],
    };
    instance.validate()?;
    Ok(instance)
}
