//! Exact one-sided solver for fixed candidates.
//!
//! In a planar one-sided labeling, the leader of the leftmost site splits the
//! instance into two independent parts. A *sub-instance* is therefore
//! described by the two leaders bounding it from above and below; its sites
//! are those strictly right of both bounding sites with their y-coordinate
//! strictly between the bounding candidates, and its candidates are those
//! strictly between the bounding candidates. The dynamic program places the
//! leftmost remaining site at every admissible candidate and recurses on the
//! two resulting sub-instances, memoizing on the bounding-leader pair.
//!
//! A candidate is *admissible* for the leftmost site when
//!
//! 1. its label does not overlap the two bounding labels,
//! 2. its horizontal segment hits no site of the sub-instance (and, when a
//!    minimum separation is set, stays at least that far from every
//!    non-incident site it passes),
//! 3. both child sub-instances keep at least as many candidates as sites,
//! 4. the constraint walk below accepts it.
//!
//! The walk ascends from the leftmost site's leaf to the lowest common
//! ancestor of the two bounding sites in the PQ-tree (the whole tree when a
//! bound is artificial), and at every node distributes the sibling subtrees
//! into *above* and *below* classes relative to the new leader. A subtree
//! whose sub-instance sites end up on both sides would split a canonical
//! group and fails immediately; subtrees holding a bounding site are forced
//! to that bound's side; at Q-nodes only the stored child order or its
//! reversal is considered. Ordering arcs are then checked against the
//! classification: an arc must never point from the below class into the
//! current subtree or the above class, nor from the current subtree into the
//! above class.
//!
//! Results of the walk are memoized on (sub-instance site set, bounding
//! sites, candidate): sub-instances with the same site set and bounds answer
//! identically no matter which bounding candidates produced them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::model::{CandId, Instance, Objective, SiteId};
use crate::pqtree::{build_pq_tree, NodeIdx, NodeKind, PqaGraph};
use crate::rational::{rat, Rational};
use crate::verify::Labeling;
use crate::Error;

/// The memoization key packs site sets into fixed-width bitsets.
const MAX_SITES: usize = 256;

/// Multiply-rotate hasher for the hot memo tables; the keys are small
/// fixed-width tuples, so collision hardening buys nothing here.
#[derive(Default)]
struct FxHasher(u64);

impl std::hash::Hasher for FxHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }

    fn write_u8(&mut self, n: u8) {
        self.write_u64(n as u64);
    }

    fn write_u32(&mut self, n: u32) {
        self.write_u64(n as u64);
    }

    fn write_u64(&mut self, n: u64) {
        self.0 = (self.0.rotate_left(5) ^ n).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
    }

    fn write_usize(&mut self, n: usize) {
        self.write_u64(n as u64);
    }
}

type FxMap<K, V> = HashMap<K, V, std::hash::BuildHasherDefault<FxHasher>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
struct SiteSet([u64; 4]);

impl SiteSet {
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    fn intersect(&self, other: &SiteSet) -> SiteSet {
        let mut out = SiteSet::default();
        for i in 0..4 {
            out.0[i] = self.0[i] & other.0[i];
        }
        out
    }

    fn union_with(&mut self, other: &SiteSet) {
        for i in 0..4 {
            self.0[i] |= other.0[i];
        }
    }

    fn is_subset(&self, other: &SiteSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_SITES).filter(move |&i| self.contains(i))
    }
}

/// One end of a sub-instance: the artificial outermost bound or a fixed
/// leader. Artificial and real bounds never alias in the memo table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Bound {
    Open,
    Leader(u32, u32),
}

impl Bound {
    fn site(&self) -> Option<usize> {
        match self {
            Bound::Open => None,
            Bound::Leader(s, _) => Some(*s as usize),
        }
    }

    fn cand(&self) -> Option<usize> {
        match self {
            Bound::Open => None,
            Bound::Leader(_, c) => Some(*c as usize),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Feasible { labeling: Labeling, value: Rational },
    Infeasible,
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Feasible { .. })
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            SolveOutcome::Feasible { value, .. } => Some(value),
            SolveOutcome::Infeasible => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    /// Diagnostics about rarely-exercised classification rules; surfaced in
    /// verbose CLI output.
    pub notes: Vec<String>,
}

/// Strips reflexive/duplicate arcs and computes the transitive reduction.
/// `None` when the relation is cyclic (no admissible one-sided labeling can
/// satisfy a cycle: it would force equal reference points).
fn reduced_arcs(n: usize, arcs: &[(SiteId, SiteId)]) -> Option<Vec<(u32, u32)>> {
    let mut direct = vec![BTreeSet::new(); n];
    for &(a, b) in arcs {
        if a != b {
            direct[a.0].insert(b.0);
        }
    }
    // reachability with cycle detection, depth-first
    let mut state = vec![0u8; n]; // 0 unvisited, 1 on stack, 2 done
    let mut reach: Vec<SiteSet> = vec![SiteSet::default(); n];
    fn dfs(
        u: usize,
        direct: &[BTreeSet<usize>],
        state: &mut [u8],
        reach: &mut [SiteSet],
    ) -> bool {
        state[u] = 1;
        for &v in &direct[u] {
            match state[v] {
                1 => return false,
                0 => {
                    if !dfs(v, direct, state, reach) {
                        return false;
                    }
                }
                _ => {}
            }
            let other = reach[v];
            reach[u].union_with(&other);
            reach[u].insert(v);
        }
        state[u] = 2;
        true
    }
    for u in 0..n {
        if state[u] == 0 && !dfs(u, &direct, &mut state, &mut reach) {
            return None;
        }
    }
    let mut out = Vec::new();
    for u in 0..n {
        for &v in &direct[u] {
            let redundant = direct[u]
                .iter()
                .any(|&w| w != v && reach[w].contains(v));
            if !redundant {
                out.push((u as u32, v as u32));
            }
        }
    }
    Some(out)
}

struct Solver {
    graph: PqaGraph,
    n: usize,
    m: usize,
    site_y: Vec<usize>,
    site_x_rank: Vec<usize>,
    cand_y: Vec<usize>,
    /// label edges in the shared y-value universe, indexed `[site][cand]`
    top_edge: Vec<Vec<usize>>,
    bot_edge: Vec<Vec<usize>>,
    sites_by_x: Vec<usize>,
    cands_by_y: Vec<usize>,
    sorted_cand_levels: Vec<usize>,
    cost: Vec<Vec<Rational>>,
    sep_ok: Option<Vec<Vec<bool>>>,
    node_set: Vec<SiteSet>,
    arcs: Vec<(u32, u32)>,
    dp: HashMap<(Bound, Bound), (Option<Rational>, Option<(u32, u32)>)>,
    walk_memo: HashMap<(SiteSet, Option<u32>, Option<u32>, u32), bool>,
    notes: BTreeSet<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Above,
    Below,
    Free,
}

impl Solver {
    fn new(
        instance: &Instance,
        objective: Objective,
        graph: PqaGraph,
        arcs: Vec<(u32, u32)>,
    ) -> Solver {
        let cands = instance.fixed_candidates().expect("checked by caller");
        let n = instance.sites.len();
        let m = cands.len();

        // shared y universe: site ys, candidate ys, and all label edges
        let two = rat(2);
        let mut values: Vec<Rational> = Vec::with_capacity(n + m + 2 * n * m);
        for s in &instance.sites {
            values.push(s.y.clone());
        }
        for c in cands {
            values.push(c.y.clone());
        }
        let mut top_edge_vals = vec![Vec::with_capacity(m); n];
        let mut bot_edge_vals = vec![Vec::with_capacity(m); n];
        for (si, s) in instance.sites.iter().enumerate() {
            let half = &s.label_height / &two;
            for c in cands {
                let top = &c.y + &half;
                let bot = &c.y - &half;
                values.push(top.clone());
                values.push(bot.clone());
                top_edge_vals[si].push(top);
                bot_edge_vals[si].push(bot);
            }
        }
        values.sort();
        values.dedup();
        let level = |v: &Rational| values.binary_search(v).expect("value in universe");

        let site_y: Vec<usize> = instance.sites.iter().map(|s| level(&s.y)).collect();
        let cand_y: Vec<usize> = cands.iter().map(|c| level(&c.y)).collect();
        let top_edge: Vec<Vec<usize>> = top_edge_vals
            .iter()
            .map(|row| row.iter().map(&level).collect())
            .collect();
        let bot_edge: Vec<Vec<usize>> = bot_edge_vals
            .iter()
            .map(|row| row.iter().map(&level).collect())
            .collect();

        let mut sites_by_x: Vec<usize> = (0..n).collect();
        sites_by_x.sort_by(|&a, &b| instance.sites[a].x.cmp(&instance.sites[b].x));
        let mut site_x_rank = vec![0; n];
        for (rank, &s) in sites_by_x.iter().enumerate() {
            site_x_rank[s] = rank;
        }

        let mut cands_by_y: Vec<usize> = (0..m).collect();
        cands_by_y.sort_by(|&a, &b| (cand_y[a], a).cmp(&(cand_y[b], b)));
        let sorted_cand_levels: Vec<usize> = cands_by_y.iter().map(|&c| cand_y[c]).collect();

        let cost: Vec<Vec<Rational>> = instance
            .sites
            .iter()
            .map(|s| {
                cands
                    .iter()
                    .map(|c| crate::model::leader_cost(s, c, &instance.boundary, objective))
                    .collect()
            })
            .collect();

        let sep_ok = instance.v_min.as_ref().map(|v| {
            instance
                .sites
                .iter()
                .map(|s| {
                    cands
                        .iter()
                        .map(|c| {
                            let gap = if s.y > c.y { &s.y - &c.y } else { &c.y - &s.y };
                            gap >= *v
                        })
                        .collect()
                })
                .collect()
        });

        let node_count = graph.tree.node_count();
        let mut node_set = vec![SiteSet::default(); node_count];
        for (idx, set) in node_set.iter_mut().enumerate() {
            for s in graph.sites_under(idx) {
                set.insert(s.0);
            }
        }

        Solver {
            graph,
            n,
            m,
            site_y,
            site_x_rank,
            cand_y,
            top_edge,
            bot_edge,
            sites_by_x,
            cands_by_y,
            sorted_cand_levels,
            cost,
            sep_ok,
            node_set,
            arcs,
            dp: HashMap::new(),
            walk_memo: HashMap::new(),
            notes: BTreeSet::new(),
        }
    }

    /// Sites strictly right of both bounding sites with y strictly inside
    /// the bounding candidates' window.
    fn members(&self, upper: Bound, lower: Bound) -> SiteSet {
        let min_rank = upper
            .site()
            .map(|s| self.site_x_rank[s])
            .into_iter()
            .chain(lower.site().map(|s| self.site_x_rank[s]))
            .max();
        let hi = upper.cand().map(|c| self.cand_y[c]);
        let lo = lower.cand().map(|c| self.cand_y[c]);
        let mut set = SiteSet::default();
        for s in 0..self.n {
            if let Some(min_rank) = min_rank {
                if self.site_x_rank[s] <= min_rank {
                    continue;
                }
            }
            if let Some(hi) = hi {
                if self.site_y[s] >= hi {
                    continue;
                }
            }
            if let Some(lo) = lo {
                if self.site_y[s] <= lo {
                    continue;
                }
            }
            set.insert(s);
        }
        set
    }

    /// Number of candidates with y strictly between the given levels.
    fn cands_between(&self, lo: Option<usize>, hi: Option<usize>) -> usize {
        let start = match lo {
            Some(lo) => self.sorted_cand_levels.partition_point(|&l| l <= lo),
            None => 0,
        };
        let end = match hi {
            Some(hi) => self.sorted_cand_levels.partition_point(|&l| l < hi),
            None => self.m,
        };
        end.saturating_sub(start)
    }

    fn admissible(&mut self, members: &SiteSet, upper: Bound, lower: Bound, s_l: usize, c_l: usize) -> bool {
        // criterion 1: no overlap with the bounding labels
        if let Bound::Leader(s1, c1) = upper {
            if self.top_edge[s_l][c_l] > self.bot_edge[s1 as usize][c1 as usize] {
                return false;
            }
        }
        if let Bound::Leader(s2, c2) = lower {
            if self.bot_edge[s_l][c_l] < self.top_edge[s2 as usize][c2 as usize] {
                return false;
            }
        }
        // criterion 2: the horizontal segment passes no sub-instance site,
        // and keeps the minimum separation where one is set
        let lvl = self.cand_y[c_l];
        for s in members.iter() {
            if s != s_l && self.site_y[s] == lvl {
                return false;
            }
        }
        if let Some(sep) = &self.sep_ok {
            let rank = self.site_x_rank[s_l];
            for s in 0..self.n {
                if self.site_x_rank[s] > rank && !sep[s][c_l] {
                    return false;
                }
            }
        }
        // criterion 3: enough candidates for the sites on either side
        let hi = upper.cand().map(|c| self.cand_y[c]);
        let lo = lower.cand().map(|c| self.cand_y[c]);
        let mut sites_above = 0usize;
        let mut sites_below = 0usize;
        for s in members.iter() {
            if s == s_l {
                continue;
            }
            if self.site_y[s] > lvl {
                sites_above += 1;
            } else {
                sites_below += 1;
            }
        }
        if sites_above > self.cands_between(Some(lvl), hi)
            || sites_below > self.cands_between(lo, Some(lvl))
        {
            return false;
        }
        // criterion 4: the constraint walk
        self.respects(members, upper, lower, s_l, c_l)
    }

    fn respects(&mut self, members: &SiteSet, upper: Bound, lower: Bound, s_l: usize, c_l: usize) -> bool {
        if self.graph.tree.root().is_none() {
            return true;
        }
        let s1 = upper.site().map(|s| s as u32);
        let s2 = lower.site().map(|s| s as u32);
        let key = (*members, s1, s2, c_l as u32);
        if let Some(&hit) = self.walk_memo.get(&key) {
            return hit;
        }
        let result = self.walk(members, s1, s2, s_l, c_l);
        self.walk_memo.insert(key, result);
        result
    }

    fn walk(&mut self, members: &SiteSet, s1: Option<u32>, s2: Option<u32>, s_l: usize, c_l: usize) -> bool {
        let lvl = self.cand_y[c_l];
        let mut above = SiteSet::default();
        let mut below = SiteSet::default();
        for s in members.iter() {
            if self.site_y[s] > lvl {
                above.insert(s);
            } else if self.site_y[s] < lvl {
                below.insert(s);
            }
        }

        let root = self.graph.tree.root().expect("non-empty tree");
        let scope = match (s1, s2) {
            (Some(a), Some(b)) => self.graph.lca(SiteId(a as usize), SiteId(b as usize)),
            _ => root,
        };
        if !self.node_set[scope].contains(s_l) || !members.is_subset(&self.node_set[scope]) {
            // unreachable for states generated by the recursion; reject defensively
            self.notes
                .insert("sub-instance escaped its constraint scope".into());
            return false;
        }
        // does a bounding site share the scope child branch of the leftmost site?
        let branch_bound_side = |this: &Self, bound: Option<u32>| -> bool {
            bound.is_some_and(|b| {
                let meet = this.graph.lca(SiteId(s_l), SiteId(b as usize));
                meet != scope && this.node_set[scope].contains(b as usize)
            })
        };
        let s1_shares = branch_bound_side(self, s1);
        let s2_shares = branch_bound_side(self, s2);

        let mut child = self.graph.tree.leaf_of(SiteId(s_l));
        while child != scope {
            let Some(t) = self.graph.tree.node(child).parent else {
                // the leaf is outside the scope subtree; treated as escape above
                return false;
            };
            let at_scope_root = t == scope;
            if !self.check_node(
                t, child, members, &above, &below, s1, s2, s1_shares, s2_shares, at_scope_root,
            ) {
                return false;
            }
            if at_scope_root {
                break;
            }
            child = t;
        }
        true
    }

    /// Classifies one sibling subtree. `Err(())` means the leader would split
    /// a canonical group or contradict a bound.
    #[allow(clippy::too_many_arguments)]
    fn classify_sibling(
        &mut self,
        set: &SiteSet,
        members: &SiteSet,
        above: &SiteSet,
        below: &SiteSet,
        s1: Option<u32>,
        s2: Option<u32>,
        s1_shares: bool,
        s2_shares: bool,
        at_scope_root: bool,
    ) -> Result<Class, ()> {
        let mem = set.intersect(members);
        let has1 = s1.is_some_and(|s| set.contains(s as usize));
        let has2 = s2.is_some_and(|s| set.contains(s as usize));
        if has1 && has2 {
            self.notes
                .insert("both bounding sites inside one sibling subtree".into());
            return Err(());
        }
        if has1 {
            return if mem.is_subset(above) { Ok(Class::Above) } else { Err(()) };
        }
        if has2 {
            return if mem.is_subset(below) { Ok(Class::Below) } else { Err(()) };
        }
        if !mem.is_empty() {
            return if mem.is_subset(above) {
                Ok(Class::Above)
            } else if mem.is_subset(below) {
                Ok(Class::Below)
            } else {
                Err(())
            };
        }
        // only sites outside the sub-instance
        if at_scope_root {
            Ok(Class::Free)
        } else if s1_shares {
            Ok(Class::Above)
        } else if s2_shares {
            Ok(Class::Below)
        } else {
            self.notes
                .insert("outside-only subtree without an anchoring bound left unconstrained".into());
            Ok(Class::Free)
        }
    }

    fn arcs_ok(&self, above: &SiteSet, below: &SiteSet, own: &SiteSet) -> bool {
        for &(u, v) in &self.arcs {
            let tag = |s: u32| -> u8 {
                let s = s as usize;
                if own.contains(s) {
                    2
                } else if above.contains(s) {
                    3
                } else if below.contains(s) {
                    1
                } else {
                    0
                }
            };
            let tu = tag(u);
            let tv = tag(v);
            if tu == 0 || tv == 0 {
                continue;
            }
            // u must not be below v: an arc from the below class into the
            // subtree or the above class, or from the subtree upward, fails
            if (tu == 1 && tv >= 2) || (tu == 2 && tv == 3) {
                return false;
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn check_node(
        &mut self,
        t: NodeIdx,
        path_child: NodeIdx,
        members: &SiteSet,
        above: &SiteSet,
        below: &SiteSet,
        s1: Option<u32>,
        s2: Option<u32>,
        s1_shares: bool,
        s2_shares: bool,
        at_scope_root: bool,
    ) -> bool {
        let children = self.graph.tree.node(t).children.clone();
        let kind = self.graph.tree.node(t).kind.clone();
        let path_pos = children
            .iter()
            .position(|&c| c == path_child)
            .expect("path child under its parent");
        let own = self.node_set[path_child];
        let s1_inside = s1.is_some_and(|s| own.contains(s as usize));
        let s2_inside = s2.is_some_and(|s| own.contains(s as usize));

        let mut classes = Vec::with_capacity(children.len());
        for (i, &ch) in children.iter().enumerate() {
            if i == path_pos {
                classes.push(Class::Free); // placeholder, never read
                continue;
            }
            let set = self.node_set[ch];
            match self.classify_sibling(
                &set, members, above, below, s1, s2, s1_shares, s2_shares, at_scope_root,
            ) {
                Ok(class) => classes.push(class),
                Err(()) => return false,
            }
        }

        // with a bounding site inside the current subtree, nothing from the
        // sub-instance may be classified past that bound
        let member_sib = |this: &Self, i: usize| -> bool {
            !this.node_set[children[i]].intersect(members).is_empty()
        };

        match kind {
            NodeKind::Leaf(_) => true,
            NodeKind::P => {
                for (i, class) in classes.iter().enumerate() {
                    if i == path_pos {
                        continue;
                    }
                    if s1_inside && *class == Class::Above && member_sib(self, i) {
                        return false;
                    }
                    if s2_inside && *class == Class::Below && member_sib(self, i) {
                        return false;
                    }
                }
                let mut above_union = SiteSet::default();
                let mut below_union = SiteSet::default();
                for (i, class) in classes.iter().enumerate() {
                    if i == path_pos {
                        continue;
                    }
                    match class {
                        Class::Above => above_union.union_with(&self.node_set[children[i]]),
                        Class::Below => below_union.union_with(&self.node_set[children[i]]),
                        Class::Free => {}
                    }
                }
                self.arcs_ok(&above_union, &below_union, &own)
            }
            NodeKind::Q => {
                // stored order or its reversal; in a valid orientation every
                // sibling before the path child is (or may be) above, every
                // one after it below
                'orientation: for reversed in [false, true] {
                    let position_ok = |i: usize| -> bool {
                        let before = if reversed { i > path_pos } else { i < path_pos };
                        match classes[i] {
                            Class::Above => before,
                            Class::Below => !before,
                            Class::Free => true,
                        }
                    };
                    for i in 0..children.len() {
                        if i != path_pos && !position_ok(i) {
                            continue 'orientation;
                        }
                    }
                    let mut above_union = SiteSet::default();
                    let mut below_union = SiteSet::default();
                    for (i, &ch) in children.iter().enumerate() {
                        if i == path_pos {
                            continue;
                        }
                        let before = if reversed { i > path_pos } else { i < path_pos };
                        if classes[i] == Class::Free {
                            continue; // unconstrained subtrees stay out of the arc check
                        }
                        if before {
                            above_union.union_with(&self.node_set[ch]);
                        } else {
                            below_union.union_with(&self.node_set[ch]);
                        }
                        if s1_inside && before && member_sib(self, i) {
                            continue 'orientation;
                        }
                        if s2_inside && !before && member_sib(self, i) {
                            continue 'orientation;
                        }
                    }
                    if self.arcs_ok(&above_union, &below_union, &own) {
                        return true;
                    }
                }
                false
            }
        }
    }

    fn eval(&mut self, upper: Bound, lower: Bound) -> Option<Rational> {
        if let Some((value, _)) = self.dp.get(&(upper, lower)) {
            return value.clone();
        }
        let members = self.members(upper, lower);
        if members.is_empty() {
            self.dp.insert((upper, lower), (Some(rat(0)), None));
            return Some(rat(0));
        }
        let s_l = self
            .sites_by_x
            .iter()
            .copied()
            .find(|&s| members.contains(s))
            .expect("non-empty member set");

        // candidate window strictly between the bounding candidates
        let hi = upper.cand().map(|c| self.cand_y[c]);
        let lo = lower.cand().map(|c| self.cand_y[c]);
        let start = match lo {
            Some(lo) => self.sorted_cand_levels.partition_point(|&l| l <= lo),
            None => 0,
        };
        let end = match hi {
            Some(hi) => self.sorted_cand_levels.partition_point(|&l| l < hi),
            None => self.m,
        };

        let mut best: Option<(Rational, (u32, u32))> = None;
        for rank in start..end {
            let c_l = self.cands_by_y[rank];
            if !self.admissible(&members, upper, lower, s_l, c_l) {
                continue;
            }
            let leader = Bound::Leader(s_l as u32, c_l as u32);
            let Some(top) = self.eval(upper, leader) else {
                continue;
            };
            let Some(bot) = self.eval(leader, lower) else {
                continue;
            };
            let total = top + bot + self.cost[s_l][c_l].clone();
            let better = match &best {
                None => true,
                Some((value, _)) => total < *value,
            };
            if better {
                best = Some((total, (s_l as u32, c_l as u32)));
            }
        }

        let (value, argmin) = match best {
            Some((value, pick)) => (Some(value), Some(pick)),
            None => (None, None),
        };
        self.dp.insert((upper, lower), (value.clone(), argmin));
        value
    }

    fn reconstruct(&self, upper: Bound, lower: Bound, out: &mut BTreeMap<SiteId, CandId>) {
        if let Some((_, Some((s, c)))) = self.dp.get(&(upper, lower)) {
            out.insert(SiteId(*s as usize), CandId(*c as usize));
            let leader = Bound::Leader(*s, *c);
            self.reconstruct(upper, leader, out);
            self.reconstruct(leader, lower, out);
        }
    }
}

/// Solves a one-sided instance with fixed candidates exactly. Infeasibility
/// (including inconsistent constraints) is a regular outcome; structural
/// problems (two-sided input, fewer candidates than sites, broken general
/// position) are errors.
///
/// When the instance carries a `v_min`, every leader additionally keeps that
/// vertical distance from the non-incident sites its horizontal segment
/// passes.
pub fn solve_fixed(instance: &Instance, objective: Objective) -> Result<SolveReport, Error> {
    instance.validate()?;
    let cands = instance
        .fixed_candidates()
        .ok_or_else(|| Error::Malformed("the exact solver needs fixed candidates".into()))?;
    if !instance.is_one_sided() {
        return Err(Error::Malformed(
            "the exact solver handles one-sided (right) instances; use the oracle for two sides"
                .into(),
        ));
    }
    let n = instance.sites.len();
    let m = cands.len();
    if n > MAX_SITES {
        return Err(Error::LimitExceeded(format!(
            "the solver handles up to {MAX_SITES} sites"
        )));
    }
    if m < n {
        return Err(Error::Malformed(format!(
            "{m} candidates for {n} sites; at least one candidate per site is required"
        )));
    }

    let infeasible = |notes: Vec<String>| {
        Ok(SolveReport {
            outcome: SolveOutcome::Infeasible,
            notes,
        })
    };

    let Some(arcs) = reduced_arcs(n, &instance.constraints.order) else {
        return infeasible(vec!["cyclic ordering constraints".into()]);
    };
    let tree = match build_pq_tree(n, &instance.constraints.groups) {
        Ok(tree) => tree,
        Err(_) => return infeasible(vec!["grouping constraints are inconsistent".into()]),
    };
    let arc_pairs: Vec<(SiteId, SiteId)> = arcs
        .iter()
        .map(|&(a, b)| (SiteId(a as usize), SiteId(b as usize)))
        .collect();
    let mut graph = PqaGraph::new(tree, &arc_pairs)?;
    if graph.reorder().is_err() {
        return infeasible(vec![
            "ordering constraints are inconsistent with the groups".into()
        ]);
    }

    let mut solver = Solver::new(instance, objective, graph, arcs);
    let value = solver.eval(Bound::Open, Bound::Open);
    let notes: Vec<String> = solver.notes.iter().cloned().collect();
    match value {
        Some(value) => {
            let mut assignment = BTreeMap::new();
            solver.reconstruct(Bound::Open, Bound::Open, &mut assignment);
            Ok(SolveReport {
                outcome: SolveOutcome::Feasible {
                    labeling: Labeling::new(assignment),
                    value,
                },
                notes,
            })
        }
        None => Ok(SolveReport {
            outcome: SolveOutcome::Infeasible,
            notes,
        }),
    }
}
