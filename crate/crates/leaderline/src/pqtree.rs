//! PQ-trees over the site set, the consecutive-ones reduction that builds
//! them from grouping constraints, and the combined structure that embeds
//! ordering arcs on the leaves.
//!
//! A PQ-tree represents a set of permutations of its leaves: the children of
//! a P-node may be permuted freely, the children of a Q-node only reversed.
//! Reducing the tree by a leaf set restricts the represented permutations to
//! those in which that set is consecutive; grouping constraints are exactly
//! such reductions. A family of groups is *consistent* iff every reduction
//! succeeds.
//!
//! [`PqaGraph`] adds directed arcs between leaves for the ordering
//! constraints (`u -> v`: `u` must precede `v` in the top-to-bottom frontier)
//! plus the precomputed per-node site sets and all-pairs leaf LCA table the
//! solver needs. [`PqaGraph::reorder`] decides whether some frontier extends
//! the partial order, and orients the tree to such a frontier when one
//! exists.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::model::SiteId;

/// Returned when no leaf order satisfies the constraints; a legitimate
/// answer, not an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inconsistent;

pub type NodeIdx = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Leaf(SiteId),
    P,
    Q,
}

#[derive(Debug, Clone)]
pub struct Node {
    pub kind: NodeKind,
    pub children: Vec<NodeIdx>,
    pub parent: Option<NodeIdx>,
}

/// A proper PQ-tree: every P-node has at least two children, every Q-node at
/// least three, and leaves biject with sites `0..n`.
#[derive(Debug, Clone)]
pub struct PqTree {
    nodes: Vec<Node>,
    root: Option<NodeIdx>,
    leaf_of: Vec<NodeIdx>,
    n: usize,
}

/// Leaf membership used during a reduction pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mark {
    Empty,
    Full,
    Partial,
}

impl PqTree {
    /// The universal tree: all `n!` permutations.
    pub fn universal(n: usize) -> PqTree {
        let mut nodes = Vec::new();
        let mut leaf_of = Vec::with_capacity(n);
        for i in 0..n {
            nodes.push(Node {
                kind: NodeKind::Leaf(SiteId(i)),
                children: Vec::new(),
                parent: None,
            });
            leaf_of.push(i);
        }
        let root = match n {
            0 => None,
            1 => Some(0),
            _ => {
                nodes.push(Node {
                    kind: NodeKind::P,
                    children: (0..n).collect(),
                    parent: None,
                });
                let root = nodes.len() - 1;
                for i in 0..n {
                    nodes[i].parent = Some(root);
                }
                Some(root)
            }
        };
        PqTree {
            nodes,
            root,
            leaf_of,
            n,
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.n
    }

    /// Size of the node arena; dead nodes from past reductions stay in it.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> Option<NodeIdx> {
        self.root
    }

    pub fn node(&self, idx: NodeIdx) -> &Node {
        &self.nodes[idx]
    }

    pub fn leaf_of(&self, site: SiteId) -> NodeIdx {
        self.leaf_of[site.0]
    }

    fn new_node(&mut self, kind: NodeKind, children: Vec<NodeIdx>) -> NodeIdx {
        let idx = self.nodes.len();
        self.nodes.push(Node {
            kind,
            children,
            parent: None,
        });
        idx
    }

    /// Groups `xs` under a fresh P-node unless it is a single node already.
    fn group(&mut self, xs: Vec<NodeIdx>) -> Option<NodeIdx> {
        match xs.len() {
            0 => None,
            1 => Some(xs[0]),
            _ => Some(self.new_node(NodeKind::P, xs)),
        }
    }

    fn leaves_under(&self, idx: NodeIdx, out: &mut Vec<SiteId>) {
        match &self.nodes[idx].kind {
            NodeKind::Leaf(s) => out.push(*s),
            _ => {
                for &c in &self.nodes[idx].children {
                    self.leaves_under(c, out);
                }
            }
        }
    }

    /// Left-to-right leaf order of the current arrangement.
    pub fn frontier(&self) -> Vec<SiteId> {
        let mut out = Vec::with_capacity(self.n);
        if let Some(root) = self.root {
            self.leaves_under(root, &mut out);
        }
        out
    }

    fn subtree_counts(&self, idx: NodeIdx, group: &BTreeSet<SiteId>, size: &mut Vec<usize>, pert: &mut Vec<usize>) {
        match &self.nodes[idx].kind {
            NodeKind::Leaf(s) => {
                size[idx] = 1;
                pert[idx] = usize::from(group.contains(s));
            }
            _ => {
                let children = self.nodes[idx].children.clone();
                let (mut sz, mut pt) = (0, 0);
                for c in children {
                    self.subtree_counts(c, group, size, pert);
                    sz += size[c];
                    pt += pert[c];
                }
                size[idx] = sz;
                pert[idx] = pt;
            }
        }
    }

    /// Restricts the represented permutations to those where `group` is
    /// consecutive. On failure the tree is left in an unspecified but unused
    /// state; callers treat the whole build as inconsistent.
    pub fn reduce(&mut self, group: &BTreeSet<SiteId>) -> Result<(), Inconsistent> {
        if group.len() <= 1 || group.len() == self.n {
            return Ok(());
        }
        let root = self.root.expect("trees with >1 pertinent leaf have a root");
        let mut size = vec![0usize; self.nodes.len()];
        let mut pert = vec![0usize; self.nodes.len()];
        self.subtree_counts(root, group, &mut size, &mut pert);

        // descend to the minimal subtree containing all pertinent leaves
        let total = group.len();
        let mut lca = root;
        'descend: loop {
            for &c in &self.nodes[lca].children {
                if pert[c] == total {
                    lca = c;
                    continue 'descend;
                }
            }
            break;
        }

        self.reduce_root(lca, &size, &pert)?;
        self.normalize();
        Ok(())
    }

    fn mark_of(&self, idx: NodeIdx, size: &[usize], pert: &[usize]) -> Mark {
        if pert[idx] == 0 {
            Mark::Empty
        } else if pert[idx] == size[idx] {
            Mark::Full
        } else {
            Mark::Partial
        }
    }

    /// Restructures a non-root partial node and returns its would-be Q
    /// children, empties first and fulls last. The node itself is dismantled;
    /// the caller splices the sequence into its own arrangement.
    fn reduce_partial(&mut self, idx: NodeIdx, size: &[usize], pert: &[usize]) -> Result<Vec<NodeIdx>, Inconsistent> {
        let children = self.nodes[idx].children.clone();
        let kind = self.nodes[idx].kind.clone();
        match kind {
            NodeKind::Leaf(_) => unreachable!("leaves are never partial"),
            NodeKind::P => {
                let mut empty = Vec::new();
                let mut full = Vec::new();
                let mut partial = Vec::new();
                for c in children {
                    match self.mark_of(c, size, pert) {
                        Mark::Empty => empty.push(c),
                        Mark::Full => full.push(c),
                        Mark::Partial => partial.push(c),
                    }
                }
                if partial.len() > 1 {
                    return Err(Inconsistent);
                }
                let mut seq = Vec::new();
                if let Some(e) = self.group(empty) {
                    seq.push(e);
                }
                if let Some(&p) = partial.first() {
                    seq.extend(self.reduce_partial(p, size, pert)?);
                }
                if let Some(f) = self.group(full) {
                    seq.push(f);
                }
                Ok(seq)
            }
            NodeKind::Q => {
                // orient so the marks read E* [partial] F*
                let marks: Vec<Mark> = children
                    .iter()
                    .map(|&c| self.mark_of(c, size, pert))
                    .collect();
                let fits = |marks: &[Mark]| -> bool {
                    let mut seen_partial = false;
                    let mut seen_full = false;
                    for m in marks {
                        match m {
                            Mark::Empty => {
                                if seen_partial || seen_full {
                                    return false;
                                }
                            }
                            Mark::Partial => {
                                if seen_partial || seen_full {
                                    return false;
                                }
                                seen_partial = true;
                            }
                            Mark::Full => seen_full = true,
                        }
                    }
                    true
                };
                let ordered: Vec<NodeIdx> = if fits(&marks) {
                    children
                } else {
                    let rev: Vec<Mark> = marks.iter().rev().copied().collect();
                    if !fits(&rev) {
                        return Err(Inconsistent);
                    }
                    children.into_iter().rev().collect()
                };
                let mut seq = Vec::new();
                for c in ordered {
                    match self.mark_of(c, size, pert) {
                        Mark::Partial => seq.extend(self.reduce_partial(c, size, pert)?),
                        _ => seq.push(c),
                    }
                }
                Ok(seq)
            }
        }
    }

    /// Applies the root templates at the minimal pertinent subtree.
    fn reduce_root(&mut self, idx: NodeIdx, size: &[usize], pert: &[usize]) -> Result<(), Inconsistent> {
        if pert[idx] == size[idx] {
            return Ok(()); // whole subtree pertinent: nothing to constrain
        }
        let children = self.nodes[idx].children.clone();
        let kind = self.nodes[idx].kind.clone();
        match kind {
            NodeKind::Leaf(_) => Ok(()),
            NodeKind::P => {
                let mut empty = Vec::new();
                let mut full = Vec::new();
                let mut partial = Vec::new();
                for c in children {
                    match self.mark_of(c, size, pert) {
                        Mark::Empty => empty.push(c),
                        Mark::Full => full.push(c),
                        Mark::Partial => partial.push(c),
                    }
                }
                match partial.len() {
                    0 => {
                        // gather the full children under one new child
                        if full.len() >= 2 {
                            let f = self.new_node(NodeKind::P, full);
                            let mut kids = empty;
                            kids.push(f);
                            self.nodes[idx].children = kids;
                        }
                        Ok(())
                    }
                    1 => {
                        let mut seq = self.reduce_partial(partial[0], size, pert)?;
                        if let Some(f) = self.group(full) {
                            seq.push(f);
                        }
                        let q = self.new_node(NodeKind::Q, seq);
                        let mut kids = empty;
                        kids.push(q);
                        self.nodes[idx].children = kids;
                        Ok(())
                    }
                    2 => {
                        let mut seq = self.reduce_partial(partial[0], size, pert)?;
                        if let Some(f) = self.group(full) {
                            seq.push(f);
                        }
                        let mut tail = self.reduce_partial(partial[1], size, pert)?;
                        tail.reverse();
                        seq.extend(tail);
                        let q = self.new_node(NodeKind::Q, seq);
                        let mut kids = empty;
                        kids.push(q);
                        self.nodes[idx].children = kids;
                        Ok(())
                    }
                    _ => Err(Inconsistent),
                }
            }
            NodeKind::Q => {
                let marks: Vec<Mark> = children
                    .iter()
                    .map(|&c| self.mark_of(c, size, pert))
                    .collect();
                let lo = marks.iter().position(|m| *m != Mark::Empty).unwrap();
                let hi = marks.iter().rposition(|m| *m != Mark::Empty).unwrap();
                for k in lo + 1..hi {
                    if marks[k] != Mark::Full {
                        return Err(Inconsistent);
                    }
                }
                let mut seq: Vec<NodeIdx> = children[..lo].to_vec();
                if marks[lo] == Mark::Partial {
                    seq.extend(self.reduce_partial(children[lo], size, pert)?);
                } else {
                    seq.push(children[lo]);
                }
                seq.extend(&children[lo + 1..hi]);
                if hi > lo {
                    if marks[hi] == Mark::Partial {
                        let mut tail = self.reduce_partial(children[hi], size, pert)?;
                        tail.reverse();
                        seq.extend(tail);
                    } else {
                        seq.push(children[hi]);
                    }
                }
                seq.extend(&children[hi + 1..]);
                self.nodes[idx].children = seq;
                Ok(())
            }
        }
    }

    /// Rebuilds parent pointers, collapses single-child chains, turns 2-child
    /// Q-nodes into P-nodes. Keeps the tree proper after a reduction.
    fn normalize(&mut self) {
        let Some(root) = self.root else { return };
        let root = self.compress(root);
        self.root = Some(root);
        self.nodes[root].parent = None;
        self.fix_parents(root);
        self.leaf_of = vec![usize::MAX; self.n];
        self.index_leaves(root);
    }

    fn compress(&mut self, idx: NodeIdx) -> NodeIdx {
        if matches!(self.nodes[idx].kind, NodeKind::Leaf(_)) {
            return idx;
        }
        let children = self.nodes[idx].children.clone();
        let compressed: Vec<NodeIdx> = children.into_iter().map(|c| self.compress(c)).collect();
        if compressed.len() == 1 {
            return compressed[0];
        }
        if compressed.len() == 2 && self.nodes[idx].kind == NodeKind::Q {
            self.nodes[idx].kind = NodeKind::P;
        }
        self.nodes[idx].children = compressed;
        idx
    }

    fn fix_parents(&mut self, idx: NodeIdx) {
        let children = self.nodes[idx].children.clone();
        for c in children {
            self.nodes[c].parent = Some(idx);
            self.fix_parents(c);
        }
    }

    fn index_leaves(&mut self, idx: NodeIdx) {
        match self.nodes[idx].kind {
            NodeKind::Leaf(s) => self.leaf_of[s.0] = idx,
            _ => {
                let children = self.nodes[idx].children.clone();
                for c in children {
                    self.index_leaves(c);
                }
            }
        }
    }

    /// Deterministic arrangement: P-children sorted by minimum leaf id,
    /// Q-children oriented so the end with the smaller minimum leaf comes
    /// first.
    pub fn canonicalize(&mut self) {
        let Some(root) = self.root else { return };
        self.canonical_rec(root);
    }

    fn canonical_rec(&mut self, idx: NodeIdx) -> SiteId {
        match self.nodes[idx].kind {
            NodeKind::Leaf(s) => s,
            NodeKind::P => {
                let children = self.nodes[idx].children.clone();
                let mut keyed: Vec<(SiteId, NodeIdx)> = children
                    .into_iter()
                    .map(|c| (self.canonical_rec(c), c))
                    .collect();
                keyed.sort();
                self.nodes[idx].children = keyed.iter().map(|&(_, c)| c).collect();
                keyed[0].0
            }
            NodeKind::Q => {
                let children = self.nodes[idx].children.clone();
                let keys: Vec<SiteId> = children.iter().map(|&c| self.canonical_rec(c)).collect();
                let min = *keys.iter().min().unwrap();
                if keys.last().unwrap() < keys.first().unwrap() {
                    self.nodes[idx].children.reverse();
                }
                min
            }
        }
    }

    /// Indented text dump, stable after [`PqTree::canonicalize`]; used by
    /// golden tests and debug output.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        if let Some(root) = self.root {
            self.dump_rec(root, 0, &mut out);
        } else {
            out.push_str("(empty)\n");
        }
        out
    }

    fn dump_rec(&self, idx: NodeIdx, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match &self.nodes[idx].kind {
            NodeKind::Leaf(s) => {
                let _ = writeln!(out, "{pad}leaf {s}");
            }
            NodeKind::P => {
                let _ = writeln!(out, "{pad}P");
                for &c in &self.nodes[idx].children {
                    self.dump_rec(c, depth + 1, out);
                }
            }
            NodeKind::Q => {
                let _ = writeln!(out, "{pad}Q");
                for &c in &self.nodes[idx].children {
                    self.dump_rec(c, depth + 1, out);
                }
            }
        }
    }

    /// Enumerates every frontier of the tree. Only sensible for small trees;
    /// the test oracles cap `n` well below ten.
    pub fn all_frontiers(&self) -> BTreeSet<Vec<SiteId>> {
        fn rec(tree: &PqTree, idx: NodeIdx) -> Vec<Vec<SiteId>> {
            match &tree.nodes[idx].kind {
                NodeKind::Leaf(s) => vec![vec![*s]],
                NodeKind::P => {
                    let child_fronts: Vec<Vec<Vec<SiteId>>> = tree.nodes[idx]
                        .children
                        .iter()
                        .map(|&c| rec(tree, c))
                        .collect();
                    let k = child_fronts.len();
                    let mut order: Vec<usize> = (0..k).collect();
                    let mut result = Vec::new();
                    permute(&mut order, 0, &mut |perm| {
                        let mut partials: Vec<Vec<SiteId>> = vec![Vec::new()];
                        for &ci in perm {
                            let mut next = Vec::new();
                            for p in &partials {
                                for f in &child_fronts[ci] {
                                    let mut q = p.clone();
                                    q.extend(f);
                                    next.push(q);
                                }
                            }
                            partials = next;
                        }
                        result.extend(partials);
                    });
                    result
                }
                NodeKind::Q => {
                    let child_fronts: Vec<Vec<Vec<SiteId>>> = tree.nodes[idx]
                        .children
                        .iter()
                        .map(|&c| rec(tree, c))
                        .collect();
                    let mut result = Vec::new();
                    for reversed in [false, true] {
                        let order: Vec<usize> = if reversed {
                            (0..child_fronts.len()).rev().collect()
                        } else {
                            (0..child_fronts.len()).collect()
                        };
                        let mut partials: Vec<Vec<SiteId>> = vec![Vec::new()];
                        for &ci in &order {
                            let mut next = Vec::new();
                            for p in &partials {
                                for f in &child_fronts[ci] {
                                    let mut q = p.clone();
                                    q.extend(f);
                                    next.push(q);
                                }
                            }
                            partials = next;
                        }
                        result.extend(partials);
                    }
                    result
                }
            }
        }
        fn permute(order: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
            if k == order.len() {
                visit(order);
                return;
            }
            for i in k..order.len() {
                order.swap(k, i);
                permute(order, k + 1, visit);
                order.swap(k, i);
            }
        }
        match self.root {
            None => BTreeSet::from([Vec::new()]),
            Some(root) => rec(self, root).into_iter().collect(),
        }
    }
}

/// Builds the PQ-tree representing exactly the site orders in which every
/// group is consecutive, or reports that no such order exists.
pub fn build_pq_tree(n: usize, groups: &[BTreeSet<SiteId>]) -> Result<PqTree, Inconsistent> {
    let mut tree = PqTree::universal(n);
    for group in groups {
        tree.reduce(group)?;
    }
    tree.canonicalize();
    tree.normalize_public();
    Ok(tree)
}

impl PqTree {
    fn normalize_public(&mut self) {
        self.normalize();
    }
}

/// PQ-tree plus ordering arcs on its leaves, per-node canonical site sets,
/// and an all-pairs leaf LCA table.
#[derive(Debug, Clone)]
pub struct PqaGraph {
    pub tree: PqTree,
    pub arcs: Vec<(SiteId, SiteId)>,
    node_sites: Vec<BTreeSet<SiteId>>,
    depth: Vec<usize>,
    lca_table: Vec<Vec<NodeIdx>>,
}

impl PqaGraph {
    /// Embeds the arcs (reflexive pairs are skipped) and precomputes the
    /// canonical-group sets and the leaf LCA table.
    pub fn new(tree: PqTree, order: &[(SiteId, SiteId)]) -> Result<PqaGraph, crate::Error> {
        let n = tree.leaf_count();
        for &(a, b) in order {
            if a.0 >= n || b.0 >= n {
                return Err(crate::Error::Malformed(format!(
                    "ordering arc {a} -> {b} references an unknown site"
                )));
            }
        }
        let arcs: Vec<(SiteId, SiteId)> = order.iter().filter(|(a, b)| a != b).copied().collect();
        let mut graph = PqaGraph {
            tree,
            arcs,
            node_sites: Vec::new(),
            depth: Vec::new(),
            lca_table: Vec::new(),
        };
        graph.rebuild_indexes();
        Ok(graph)
    }

    fn rebuild_indexes(&mut self) {
        let node_count = self.tree.nodes.len();
        self.node_sites = vec![BTreeSet::new(); node_count];
        self.depth = vec![0; node_count];
        if let Some(root) = self.tree.root {
            self.collect(root, 0);
        }
        let n = self.tree.leaf_count();
        self.lca_table = vec![vec![usize::MAX; n]; n];
        let paths: Vec<Vec<NodeIdx>> = (0..n)
            .map(|i| {
                let mut path = Vec::new();
                let mut cur = Some(self.tree.leaf_of(SiteId(i)));
                while let Some(v) = cur {
                    path.push(v);
                    cur = self.tree.nodes[v].parent;
                }
                path
            })
            .collect();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    self.lca_table[a][b] = self.tree.leaf_of(SiteId(a));
                    continue;
                }
                let set: std::collections::HashSet<NodeIdx> = paths[a].iter().copied().collect();
                let lca = paths[b]
                    .iter()
                    .copied()
                    .find(|v| set.contains(v))
                    .expect("leaf paths share the root");
                self.lca_table[a][b] = lca;
            }
        }
    }

    fn collect(&mut self, idx: NodeIdx, depth: usize) {
        self.depth[idx] = depth;
        match self.tree.nodes[idx].kind {
            NodeKind::Leaf(s) => {
                self.node_sites[idx].insert(s);
            }
            _ => {
                let children = self.tree.nodes[idx].children.clone();
                for c in children {
                    self.collect(c, depth + 1);
                    let child_sites = self.node_sites[c].clone();
                    self.node_sites[idx].extend(child_sites);
                }
            }
        }
    }

    /// Lowest common ancestor of two leaves (the leaf itself when equal).
    pub fn lca(&self, a: SiteId, b: SiteId) -> NodeIdx {
        self.lca_table[a.0][b.0]
    }

    pub fn depth_of(&self, idx: NodeIdx) -> usize {
        self.depth[idx]
    }

    /// Canonical group of a node: the sites at its leaf descendants.
    pub fn sites_under(&self, idx: NodeIdx) -> &BTreeSet<SiteId> {
        &self.node_sites[idx]
    }

    /// Canonical groups of all live internal nodes, keyed by node index.
    pub fn canonical_groups(&self) -> Vec<(NodeIdx, BTreeSet<SiteId>)> {
        let mut out = Vec::new();
        let Some(root) = self.tree.root else {
            return out;
        };
        let mut stack = vec![root];
        while let Some(idx) = stack.pop() {
            if !matches!(self.tree.nodes[idx].kind, NodeKind::Leaf(_)) {
                out.push((idx, self.node_sites[idx].clone()));
                stack.extend(&self.tree.nodes[idx].children);
            }
        }
        out.sort_by_key(|(idx, _)| *idx);
        out
    }

    /// Decides whether some frontier of the tree linearly extends the arcs.
    /// On success the tree is re-oriented so that its current frontier is
    /// such an extension, and that frontier is returned.
    ///
    /// Each arc constrains only the child order at the LCA of its endpoints,
    /// so per-node feasibility (a topological order of the children at
    /// P-nodes, identity or reversal at Q-nodes) is both necessary and
    /// sufficient.
    pub fn reorder(&mut self) -> Result<Vec<SiteId>, Inconsistent> {
        let Some(root) = self.tree.root else {
            return Ok(Vec::new());
        };
        // per-node constraints between child positions
        let node_count = self.tree.nodes.len();
        let mut constraints: Vec<Vec<(usize, usize)>> = vec![Vec::new(); node_count];
        for &(u, v) in &self.arcs {
            let t = self.lca(u, v);
            let children = &self.tree.nodes[t].children;
            let slot_of = |site: SiteId| -> usize {
                children
                    .iter()
                    .position(|&c| self.node_sites[c].contains(&site))
                    .expect("arc endpoint below its lca")
            };
            let su = slot_of(u);
            let sv = slot_of(v);
            debug_assert_ne!(su, sv);
            constraints[t].push((su, sv));
        }
        self.reorder_rec(root, &constraints)?;
        // orientation changed; leaf positions did not, but rebuild for safety
        self.rebuild_indexes();
        Ok(self.tree.frontier())
    }

    fn reorder_rec(&mut self, idx: NodeIdx, constraints: &[Vec<(usize, usize)>]) -> Result<(), Inconsistent> {
        let children = self.tree.nodes[idx].children.clone();
        match self.tree.nodes[idx].kind {
            NodeKind::Leaf(_) => return Ok(()),
            NodeKind::P => {
                // topological order of children, smallest min-leaf first
                let k = children.len();
                let mut succ = vec![Vec::new(); k];
                let mut indeg = vec![0usize; k];
                for &(a, b) in &constraints[idx] {
                    succ[a].push(b);
                    indeg[b] += 1;
                }
                let key = |slot: usize, this: &Self| -> SiteId {
                    *this.node_sites[children[slot]].iter().next().unwrap()
                };
                let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<(SiteId, usize)>> =
                    (0..k)
                        .filter(|&s| indeg[s] == 0)
                        .map(|s| std::cmp::Reverse((key(s, self), s)))
                        .collect();
                let mut order = Vec::with_capacity(k);
                while let Some(std::cmp::Reverse((_, s))) = heap.pop() {
                    order.push(s);
                    for &t in &succ[s] {
                        indeg[t] -= 1;
                        if indeg[t] == 0 {
                            heap.push(std::cmp::Reverse((key(t, self), t)));
                        }
                    }
                }
                if order.len() != k {
                    return Err(Inconsistent); // cycle among children
                }
                self.tree.nodes[idx].children = order.into_iter().map(|s| children[s]).collect();
            }
            NodeKind::Q => {
                let forward_ok = constraints[idx].iter().all(|&(a, b)| a < b);
                let backward_ok = constraints[idx].iter().all(|&(a, b)| a > b);
                if forward_ok {
                    // keep as is
                } else if backward_ok {
                    self.tree.nodes[idx].children.reverse();
                } else {
                    return Err(Inconsistent);
                }
            }
        }
        let children = self.tree.nodes[idx].children.clone();
        for c in children {
            self.reorder_rec(c, constraints)?;
        }
        Ok(())
    }
}

/// Convenience: full consistency pipeline for a constraint set. Returns the
/// oriented graph whose frontier both keeps every group consecutive and
/// extends the partial order, or `Inconsistent`.
pub fn build_pqa_graph(
    n: usize,
    groups: &[BTreeSet<SiteId>],
    order: &[(SiteId, SiteId)],
) -> Result<Result<PqaGraph, Inconsistent>, crate::Error> {
    let tree = match build_pq_tree(n, groups) {
        Ok(t) => t,
        Err(Inconsistent) => return Ok(Err(Inconsistent)),
    };
    let mut graph = PqaGraph::new(tree, order)?;
    match graph.reorder() {
        Ok(_) => Ok(Ok(graph)),
        Err(Inconsistent) => Ok(Err(Inconsistent)),
    }
}
