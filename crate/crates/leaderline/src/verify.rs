//! Polynomial-time admissibility checking for arbitrary one- or two-sided
//! labelings, plus objective evaluation.
//!
//! A labeling is *admissible* when it is planar (no label overlaps, no
//! leader-leader crossing, no leader through a site) and respects every
//! grouping and ordering constraint. The verifier reports each violation
//! individually; it never tries to repair anything.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::model::{
    labels_overlap, leader_cost, leader_crosses_site, leaders_conflict, CandId, Candidate,
    Instance, Objective, Side, SiteId,
};
use crate::rational::{format_number, rat, Rational};
use crate::Error;

/// A total, injective assignment of sites to candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub assignment: BTreeMap<SiteId, CandId>,
}

impl Labeling {
    pub fn new(assignment: BTreeMap<SiteId, CandId>) -> Labeling {
        Labeling { assignment }
    }

    pub fn candidate_of(&self, site: SiteId) -> Option<CandId> {
        self.assignment.get(&site).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupViolation {
    /// Members of the group are labeled on different sides.
    SideSplit { group: usize },
    /// A non-member label sits strictly between two member labels.
    Interleaved { group: usize, intruder: SiteId },
}

/// Itemized verification outcome. `admissible` holds exactly when every
/// violation list is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub label_overlaps: Vec<(SiteId, SiteId)>,
    pub leader_leader: Vec<(SiteId, SiteId)>,
    pub leader_site: Vec<(SiteId, SiteId)>,
    pub separation: Vec<(SiteId, SiteId)>,
    pub group_violations: Vec<GroupViolation>,
    pub order_violations: Vec<(SiteId, SiteId)>,
    pub objective_value: Rational,
    pub admissible: bool,
}

impl VerifyReport {
    pub fn violation_count(&self) -> usize {
        self.label_overlaps.len()
            + self.leader_leader.len()
            + self.leader_site.len()
            + self.separation.len()
            + self.group_violations.len()
            + self.order_violations.len()
    }

    /// Line-oriented text form used by the CLI and golden tests.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "admissible {}", self.admissible);
        let _ = writeln!(out, "objective {}", format_number(&self.objective_value));
        let _ = writeln!(out, "violations {}", self.violation_count());
        for (a, b) in &self.label_overlaps {
            let _ = writeln!(out, "label-overlap {a} {b}");
        }
        for (a, b) in &self.leader_leader {
            let _ = writeln!(out, "leader-cross {a} {b}");
        }
        for (a, b) in &self.leader_site {
            let _ = writeln!(out, "site-cross {a} {b}");
        }
        for (a, b) in &self.separation {
            let _ = writeln!(out, "separation {a} {b}");
        }
        for v in &self.group_violations {
            match v {
                GroupViolation::SideSplit { group } => {
                    let _ = writeln!(out, "group-side-split {group}");
                }
                GroupViolation::Interleaved { group, intruder } => {
                    let _ = writeln!(out, "group-interleaved {group} {intruder}");
                }
            }
        }
        for (a, b) in &self.order_violations {
            let _ = writeln!(out, "order-violated {a} {b}");
        }
        out
    }
}

fn resolve<'a>(
    instance: &'a Instance,
    labeling: &Labeling,
) -> Result<Vec<(&'a crate::model::Site, &'a Candidate)>, Error> {
    let candidates = instance
        .fixed_candidates()
        .ok_or_else(|| Error::Malformed("verification needs an explicit candidate set".into()))?;
    if labeling.assignment.len() != instance.sites.len() {
        return Err(Error::Malformed(format!(
            "labeling covers {} of {} sites",
            labeling.assignment.len(),
            instance.sites.len()
        )));
    }
    let mut used = vec![false; candidates.len()];
    let mut pairs = Vec::with_capacity(instance.sites.len());
    for site in &instance.sites {
        let cand_id = labeling
            .candidate_of(site.id)
            .ok_or_else(|| Error::Malformed(format!("site {} is unlabeled", site.id)))?;
        let cand = candidates
            .get(cand_id.0)
            .ok_or_else(|| Error::Malformed(format!("unknown candidate {cand_id}")))?;
        if used[cand_id.0] {
            return Err(Error::Malformed(format!(
                "candidate {cand_id} is used by two sites"
            )));
        }
        used[cand_id.0] = true;
        pairs.push((site, cand));
    }
    Ok(pairs)
}

/// Sum of the per-leader objective over the labeling.
pub fn evaluate(
    instance: &Instance,
    labeling: &Labeling,
    objective: Objective,
) -> Result<Rational, Error> {
    let pairs = resolve(instance, labeling)?;
    Ok(pairs
        .iter()
        .map(|(s, c)| leader_cost(s, c, &instance.boundary, objective))
        .fold(rat(0), |acc, v| acc + v))
}

/// Full admissibility check: planarity, optional minimum vertical separation
/// of leaders from non-incident sites, grouping, and ordering. Ordering
/// constraints only bind between labels on a common side.
pub fn verify(
    instance: &Instance,
    labeling: &Labeling,
    objective: Objective,
    v_min: Option<&Rational>,
) -> Result<VerifyReport, Error> {
    let pairs = resolve(instance, labeling)?;
    let boundary = &instance.boundary;
    let n = pairs.len();

    let mut label_overlaps = Vec::new();
    let mut leader_leader = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (si, ci) = pairs[i];
            let (sj, cj) = pairs[j];
            if ci.side == cj.side && labels_overlap(ci, &si.label_height, cj, &sj.label_height) {
                label_overlaps.push((si.id, sj.id));
            }
            if leaders_conflict(si, ci, sj, cj, boundary) {
                leader_leader.push((si.id, sj.id));
            }
        }
    }

    let mut leader_site = Vec::new();
    for &(site, cand) in &pairs {
        for other in &instance.sites {
            if other.id != site.id && leader_crosses_site(site, cand, other, boundary) {
                leader_site.push((site.id, other.id));
            }
        }
    }

    let mut separation = Vec::new();
    if let Some(v_min) = v_min {
        for &(site, cand) in &pairs {
            for other in &instance.sites {
                if other.id == site.id {
                    continue;
                }
                let in_span = match cand.side {
                    Side::Right => other.x > site.x,
                    Side::Left => other.x < site.x,
                };
                if in_span {
                    let gap = if other.y > cand.y {
                        &other.y - &cand.y
                    } else {
                        &cand.y - &other.y
                    };
                    if gap < *v_min {
                        separation.push((site.id, other.id));
                    }
                }
            }
        }
    }

    let mut group_violations = Vec::new();
    for (gi, group) in instance.constraints.groups.iter().enumerate() {
        let members: Vec<&(_, _)> = pairs.iter().filter(|(s, _)| group.contains(&s.id)).collect();
        if members.is_empty() {
            continue;
        }
        let side = members[0].1.side;
        if members.iter().any(|(_, c)| c.side != side) {
            group_violations.push(GroupViolation::SideSplit { group: gi });
            continue;
        }
        let mut lo = &members[0].1.y;
        let mut hi = &members[0].1.y;
        for (_, c) in &members {
            if c.y < *lo {
                lo = &c.y;
            }
            if c.y > *hi {
                hi = &c.y;
            }
        }
        for (s, c) in &pairs {
            if !group.contains(&s.id) && c.side == side && c.y > *lo && c.y < *hi {
                group_violations.push(GroupViolation::Interleaved {
                    group: gi,
                    intruder: s.id,
                });
            }
        }
    }

    let mut order_violations = Vec::new();
    for &(a, b) in &instance.constraints.order {
        let (_, ca) = pairs[a.0];
        let (_, cb) = pairs[b.0];
        // constraints across opposite sides have no effect
        if ca.side == cb.side && ca.y < cb.y {
            order_violations.push((a, b));
        }
    }

    let objective_value = pairs
        .iter()
        .map(|(s, c)| leader_cost(s, c, boundary, objective))
        .fold(rat(0), |acc, v| acc + v);

    let admissible = label_overlaps.is_empty()
        && leader_leader.is_empty()
        && leader_site.is_empty()
        && separation.is_empty()
        && group_violations.is_empty()
        && order_violations.is_empty();

    Ok(VerifyReport {
        label_overlaps,
        leader_leader,
        leader_site,
        separation,
        group_violations,
        order_violations,
        objective_value,
        admissible,
    })
}
