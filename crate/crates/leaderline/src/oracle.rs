//! Brute-force reference solvers: exhaustive enumeration of injective
//! site-to-candidate assignments, filtered through [`crate::verify::verify`],
//! returning the exact optimum. Works for one- and two-sided instances and
//! serves as ground truth for the dynamic-programming solver and for the
//! hardness-construction fixtures.
//!
//! The search may prune branches whose partial assignment already contains a
//! definite violation (a pairwise conflict, or a constraint breach that no
//! completion can undo) and may drop candidate values that are pairwise
//! incompatible with every remaining choice for some other site. Both steps
//! are pure optimizations: they never remove an admissible total assignment,
//! and `prune: false` disables them for cross-checking.

use std::collections::BTreeMap;

use crate::model::{
    labels_overlap, leader_crosses_site, leaders_conflict, CandId, Instance, Objective, Side,
    SiteId,
};
use crate::rational::{rat, Rational};
use num_traits::Signed;
use crate::verify::{verify, Labeling};
use crate::Error;

#[derive(Debug, Clone)]
pub struct OracleLimits {
    /// Refuse instances with more sites than this.
    pub max_sites: usize,
    /// Abort enumeration after this many search nodes.
    pub max_nodes: u64,
    /// Allow sound pruning. Disabled only by tests that compare the pruned
    /// and unpruned paths.
    pub prune: bool,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_sites: 8,
            max_nodes: 200_000_000,
            prune: true,
        }
    }
}

impl OracleLimits {
    pub fn with_max_sites(max_sites: usize) -> OracleLimits {
        OracleLimits {
            max_sites,
            ..OracleLimits::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Feasible { labeling: Labeling, value: Rational },
    Infeasible,
}

impl OracleOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            OracleOutcome::Feasible { value, .. } => Some(value),
            OracleOutcome::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, OracleOutcome::Feasible { .. })
    }
}

struct Search<'a> {
    instance: &'a Instance,
    objective: Objective,
    v_min: Option<&'a Rational>,
    n: usize,
    m: usize,
    /// `compat[s1 * m + c1][s2 * m + c2]`: the two leaders can coexist.
    compat: Vec<Vec<bool>>,
    /// candidate ids in (side, y, id) order — the enumeration order
    cand_order: Vec<usize>,
    site_order: Vec<usize>,
    domains: Vec<Vec<bool>>,
    nodes: u64,
    max_nodes: u64,
    prune: bool,
    count: u64,
    best: Option<(Rational, Vec<usize>)>,
}

impl<'a> Search<'a> {
    fn new(
        instance: &'a Instance,
        objective: Objective,
        v_min: Option<&'a Rational>,
        limits: &OracleLimits,
    ) -> Result<Search<'a>, Error> {
        let cands = instance
            .fixed_candidates()
            .ok_or_else(|| Error::Malformed("the oracle needs an explicit candidate set".into()))?;
        let n = instance.sites.len();
        let m = cands.len();
        if n > limits.max_sites {
            return Err(Error::LimitExceeded(format!(
                "{n} sites where at most {} are allowed",
                limits.max_sites
            )));
        }
        let boundary = &instance.boundary;

        // order pairs for the pairwise check
        let mut after: Vec<Vec<bool>> = vec![vec![false; n]; n];
        for &(a, b) in &instance.constraints.order {
            after[a.0][b.0] = true;
        }
        // group co-membership for the side-split pairwise check
        let mut same_group: Vec<Vec<bool>> = vec![vec![false; n]; n];
        for group in &instance.constraints.groups {
            for &a in group {
                for &b in group {
                    same_group[a.0][b.0] = true;
                }
            }
        }

        let dim = n * m;
        let mut compat = vec![vec![true; dim]; dim];
        for s1 in 0..n {
            let site1 = &instance.sites[s1];
            for c1 in 0..m {
                let cand1 = &cands[c1];
                for s2 in 0..n {
                    if s2 == s1 {
                        continue;
                    }
                    let site2 = &instance.sites[s2];
                    for c2 in 0..m {
                        let cand2 = &cands[c2];
                        let a = s1 * m + c1;
                        let b = s2 * m + c2;
                        if !compat[a][b] {
                            continue;
                        }
                        let mut ok = c1 != c2;
                        if ok && cand1.side == cand2.side {
                            ok = !labels_overlap(cand1, &site1.label_height, cand2, &site2.label_height);
                            if ok && after[s1][s2] && cand1.y < cand2.y {
                                ok = false;
                            }
                            if ok && after[s2][s1] && cand2.y < cand1.y {
                                ok = false;
                            }
                        } else if ok && same_group[s1][s2] {
                            ok = false; // group split across sides
                        }
                        if ok && leaders_conflict(site1, cand1, site2, cand2, boundary) {
                            ok = false;
                        }
                        if ok && leader_crosses_site(site1, cand1, site2, boundary) {
                            ok = false;
                        }
                        if ok && leader_crosses_site(site2, cand2, site1, boundary) {
                            ok = false;
                        }
                        if ok {
                            if let Some(v) = v_min {
                                let span1 = match cand1.side {
                                    Side::Right => site2.x > site1.x,
                                    Side::Left => site2.x < site1.x,
                                };
                                if span1 && (&site2.y - &cand1.y).abs() < *v {
                                    ok = false;
                                }
                                let span2 = match cand2.side {
                                    Side::Right => site1.x > site2.x,
                                    Side::Left => site1.x < site2.x,
                                };
                                if ok && span2 && (&site1.y - &cand2.y).abs() < *v {
                                    ok = false;
                                }
                            }
                        }
                        if !ok {
                            compat[a][b] = false;
                            compat[b][a] = false;
                        }
                    }
                }
            }
        }

        let mut cand_order: Vec<usize> = (0..m).collect();
        cand_order.sort_by(|&a, &b| {
            (cands[a].side, &cands[a].y, a).cmp(&(cands[b].side, &cands[b].y, b))
        });

        Ok(Search {
            instance,
            objective,
            v_min,
            n,
            m,
            compat,
            cand_order,
            site_order: (0..n).collect(),
            domains: vec![vec![true; m]; n],
            nodes: 0,
            max_nodes: limits.max_nodes,
            prune: limits.prune,
            count: 0,
            best: None,
        })
    }

    /// Removes candidate values that are pairwise incompatible with every
    /// remaining value of some other site. Any admissible total assignment
    /// uses pairwise-compatible values throughout, so this never loses one.
    fn propagate_domains(&mut self) -> bool {
        loop {
            let mut changed = false;
            for s in 0..self.n {
                for c in 0..self.m {
                    if !self.domains[s][c] {
                        continue;
                    }
                    let a = s * self.m + c;
                    for other in 0..self.n {
                        if other == s {
                            continue;
                        }
                        let viable = (0..self.m).any(|c2| {
                            self.domains[other][c2] && self.compat[a][other * self.m + c2]
                        });
                        if !viable {
                            self.domains[s][c] = false;
                            changed = true;
                            break;
                        }
                    }
                }
            }
            if !changed {
                return (0..self.n).all(|s| (0..self.m).any(|c| self.domains[s][c]));
            }
        }
    }

    fn order_sites_by_domain(&mut self) {
        let mut keyed: Vec<(usize, usize)> = (0..self.n)
            .map(|s| ((0..self.m).filter(|&c| self.domains[s][c]).count(), s))
            .collect();
        keyed.sort();
        self.site_order = keyed.into_iter().map(|(_, s)| s).collect();
    }

    /// A partial assignment already breaks a group irreparably when two
    /// members sit on different sides or a placed non-member label lies
    /// strictly between two placed member labels: labels never move again.
    fn definite_group_violation(&self, assigned: &[Option<usize>]) -> bool {
        let cands = self.instance.fixed_candidates().unwrap();
        for group in &self.instance.constraints.groups {
            let mut side: Option<Side> = None;
            let mut lo: Option<&Rational> = None;
            let mut hi: Option<&Rational> = None;
            let mut split = false;
            for &s in group {
                if let Some(c) = assigned[s.0] {
                    let cand = &cands[c];
                    match side {
                        None => side = Some(cand.side),
                        Some(side) if side != cand.side => {
                            split = true;
                            break;
                        }
                        _ => {}
                    }
                    if lo.is_none() || cand.y < *lo.unwrap() {
                        lo = Some(&cand.y);
                    }
                    if hi.is_none() || cand.y > *hi.unwrap() {
                        hi = Some(&cand.y);
                    }
                }
            }
            if split {
                return true;
            }
            if let (Some(side), Some(lo), Some(hi)) = (side, lo, hi) {
                for (s, slot) in assigned.iter().enumerate() {
                    if let Some(c) = slot {
                        if group.contains(&SiteId(s)) {
                            continue;
                        }
                        let cand = &cands[*c];
                        if cand.side == side && cand.y > *lo && cand.y < *hi {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn record_leaf(&mut self, assigned: &[Option<usize>]) -> Result<(), Error> {
        let assignment: BTreeMap<SiteId, CandId> = assigned
            .iter()
            .enumerate()
            .map(|(s, c)| (SiteId(s), CandId(c.unwrap())))
            .collect();
        let labeling = Labeling::new(assignment);
        let report = verify(self.instance, &labeling, self.objective, self.v_min)?;
        if !report.admissible {
            return Ok(());
        }
        self.count += 1;
        let vec: Vec<usize> = assigned.iter().map(|c| c.unwrap()).collect();
        let value = report.objective_value;
        let better = match &self.best {
            None => true,
            Some((best_value, best_vec)) => {
                value < *best_value || (value == *best_value && vec < *best_vec)
            }
        };
        if better {
            self.best = Some((value, vec));
        }
        Ok(())
    }

    fn run(
        &mut self,
        depth: usize,
        assigned: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> Result<(), Error> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::LimitExceeded(format!(
                "enumeration exceeded {} nodes",
                self.max_nodes
            )));
        }
        if depth == self.n {
            return self.record_leaf(assigned);
        }
        let site = self.site_order[depth];
        for oi in 0..self.m {
            let cand = self.cand_order[oi];
            if used[cand] || !self.domains[site][cand] {
                continue;
            }
            // pairwise screen against everything placed so far
            let a = site * self.m + cand;
            let clash = assigned.iter().enumerate().any(|(s2, c2)| match c2 {
                Some(c2) => !self.compat[a][s2 * self.m + *c2],
                None => false,
            });
            if self.prune && clash {
                continue;
            }
            assigned[site] = Some(cand);
            used[cand] = true;
            let mut skip = false;
            if self.prune {
                if clash || self.definite_group_violation(assigned) {
                    skip = true;
                }
                if !skip {
                    // forward check: every unplaced site keeps some candidate
                    // compatible with the whole prefix
                    'fw: for later in &self.site_order[depth + 1..] {
                        let any = (0..self.m).any(|c2| {
                            if !self.domains[*later][c2] {
                                return false;
                            }
                            let b = later * self.m + c2;
                            assigned.iter().enumerate().all(|(s3, c3)| match c3 {
                                Some(c3) => self.compat[b][s3 * self.m + *c3],
                                None => true,
                            })
                        });
                        if !any {
                            skip = true;
                            break 'fw;
                        }
                    }
                }
            }
            if !skip {
                self.run(depth + 1, assigned, used)?;
            }
            assigned[site] = None;
            used[cand] = false;
        }
        Ok(())
    }

    fn execute(&mut self) -> Result<(), Error> {
        if self.n > 0 {
            if self.m < self.n {
                return Ok(()); // no injective assignment exists
            }
            if self.prune {
                if !self.propagate_domains() {
                    return Ok(());
                }
                self.order_sites_by_domain();
            }
            let mut assigned = vec![None; self.n];
            let mut used = vec![false; self.m];
            self.run(0, &mut assigned, &mut used)?;
        } else {
            self.count = 1;
            self.best = Some((rat(0), Vec::new()));
        }
        Ok(())
    }
}

/// Exhaustively finds a minimum-objective admissible labeling, or reports
/// infeasibility. Ties are broken toward the lexicographically smallest
/// assignment vector (candidate ids in site order).
pub fn oracle_solve(
    instance: &Instance,
    objective: Objective,
    v_min: Option<&Rational>,
    limits: &OracleLimits,
) -> Result<OracleOutcome, Error> {
    let mut search = Search::new(instance, objective, v_min, limits)?;
    search.execute()?;
    Ok(match search.best.take() {
        Some((value, vec)) => OracleOutcome::Feasible {
            labeling: Labeling::new(
                vec.into_iter()
                    .enumerate()
                    .map(|(s, c)| (SiteId(s), CandId(c)))
                    .collect(),
            ),
            value,
        },
        None => OracleOutcome::Infeasible,
    })
}

/// Number of admissible injective assignments.
pub fn count_admissible(instance: &Instance, limits: &OracleLimits) -> Result<u64, Error> {
    let mut search = Search::new(instance, Objective::Length, None, limits)?;
    search.execute()?;
    Ok(search.count)
}
