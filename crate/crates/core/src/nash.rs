//! Normalized Nash blow-ups of cones and resolution trees.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::hilbert::{hilbert_basis, HilbertBasis};
use crate::lattice::{Int, IntVec};
use crate::polyhedral::dd::Echelon;
use crate::polyhedral::{canonical_form, minkowski_sum_hull, CanonicalForm, Cone, ConeKey, Polyhedron};

/// Sums of `d` linearly independent Hilbert basis elements, sorted and deduplicated.
pub fn sum_set(h: &HilbertBasis) -> Vec<IntVec> {
    let d = h.cone().dim();
    let elems = h.elements();
    assert!(elems.len() >= d, "Hilbert basis of a proper cone spans");
    let mut out = HashSet::new();
    let mut echelon = Echelon::new();
    fn walk(
        elems: &[IntVec],
        start: usize,
        d: usize,
        acc: &IntVec,
        echelon: &mut Echelon,
        out: &mut HashSet<IntVec>,
    ) {
        if echelon.len() == d {
            out.insert(acc.clone());
            return;
        }
        let need = d - echelon.len();
        for i in start..elems.len() {
            if elems.len() - i < need {
                break;
            }
            if !echelon.push(&elems[i]) {
                continue;
            }
            walk(elems, i + 1, d, &acc.add(&elems[i]), echelon, out);
            echelon.pop();
        }
    }
    walk(elems, 0, d, &IntVec::zeros(d), &mut echelon, &mut out);
    let mut s: Vec<IntVec> = out.into_iter().collect();
    s.sort();
    s
}

/// Everything computed during one blow-up of a cone.
#[derive(Clone, Debug)]
pub struct BlowupStep {
    pub input: Cone,
    pub hilbert: HilbertBasis,
    pub sum_set: Vec<IntVec>,
    pub polyhedron: Polyhedron,
    /// One localization per vertex, in vertex order.
    pub children: Vec<Cone>,
}

pub fn blowup_step(c: &Cone) -> BlowupStep {
    let hilbert = hilbert_basis(c);
    let s = sum_set(&hilbert);
    let polyhedron = minkowski_sum_hull(c, &s).expect("sum set is nonempty and of matching dimension");
    for v in polyhedron.vertices() {
        assert!(s.binary_search(v).is_ok(), "vertex {v} of C + Hull S lies outside S");
    }
    let children = polyhedron
        .vertices()
        .iter()
        .map(|v| polyhedron.localize(v).expect("localizing at a vertex"))
        .collect();
    BlowupStep { input: c.clone(), hilbert, sum_set: s, polyhedron, children }
}

/// The multiset of cones making up the Nash blow-up of `c`.
pub fn nash_blowup(c: &Cone) -> Vec<Cone> {
    blowup_step(c).children
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeStatus {
    Smooth,
    Expanded,
    /// Simplicial with index below the pruning threshold.
    PrunedKnown,
    /// Left unexpanded because a depth or node budget ran out.
    PrunedDepth,
}

impl NodeStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            NodeStatus::Smooth => "smooth",
            NodeStatus::Expanded => "expanded",
            NodeStatus::PrunedKnown => "pruned-known",
            NodeStatus::PrunedDepth => "pruned-depth",
        }
    }

    pub fn parse(s: &str) -> Option<NodeStatus> {
        Some(match s {
            "smooth" => NodeStatus::Smooth,
            "expanded" => NodeStatus::Expanded,
            "pruned-known" => NodeStatus::PrunedKnown,
            "pruned-depth" => NodeStatus::PrunedDepth,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug)]
pub struct TreeNode {
    pub cone: Cone,
    pub key: ConeKey,
    pub index: Int,
    pub dual_index: Int,
    pub status: NodeStatus,
    pub depth: usize,
    pub children: Vec<usize>,
}

/// Nodes in breadth-first order; node 0 is the root.
#[derive(Clone, Debug)]
pub struct ResolutionTree {
    nodes: Vec<TreeNode>,
    blowups: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeStats {
    pub depth: usize,
    /// Every node, root and pruned leaves included.
    pub size: usize,
    pub max_facets: usize,
    pub resolved: bool,
    /// Number of distinct equivalence classes among the nodes.
    pub distinct: usize,
}

impl ResolutionTree {
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    /// Blow-ups actually computed while building this tree (cache hits excluded).
    pub fn blowups_performed(&self) -> usize {
        self.blowups
    }

    pub fn stats(&self) -> TreeStats {
        tree_stats(self)
    }

    /// Children of `id` grouped into runs of equivalent cones with identical
    /// subtrees, as `(multiplicity, representative)`.
    pub fn collapsed_children(&self, id: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        let mut sigs: Vec<String> = Vec::new();
        for &c in &self.nodes[id].children {
            let sig = self.subtree_signature(c);
            match sigs.iter().position(|s| *s == sig) {
                Some(i) => out[i].0 += 1,
                None => {
                    sigs.push(sig);
                    out.push((1, c));
                }
            }
        }
        out
    }

    /// A string identifying the subtree at `id` up to equivalence of every node.
    pub fn subtree_signature(&self, id: usize) -> String {
        let n = &self.nodes[id];
        let mut kids: Vec<String> = n.children.iter().map(|&c| self.subtree_signature(c)).collect();
        kids.sort();
        format!("{}:{}[{}]", n.key, n.status.as_str(), kids.join(";"))
    }

    /// Reassembles a tree from nodes already in breadth-first order.
    pub fn from_nodes(nodes: Vec<TreeNode>) -> ResolutionTree {
        ResolutionTree { nodes, blowups: 0 }
    }
}

pub fn tree_stats(t: &ResolutionTree) -> TreeStats {
    let keys: HashSet<&ConeKey> = t.nodes.iter().map(|n| &n.key).collect();
    TreeStats {
        depth: t.nodes.iter().map(|n| n.depth).max().unwrap_or(0),
        size: t.nodes.len(),
        max_facets: t.nodes.iter().map(|n| n.cone.facets().len()).max().unwrap_or(0),
        resolved: t.nodes.iter().all(|n| n.status != NodeStatus::PrunedDepth),
        distinct: keys.len(),
    }
}

#[derive(Clone, Debug)]
pub struct ResolveOptions {
    /// Simplicial cones with index strictly below this become leaves.
    pub prune_below_index: Option<Int>,
    pub memoize: bool,
    pub max_depth: Option<usize>,
    pub max_nodes: Option<usize>,
    /// Worker threads; 0 picks the rayon default.
    pub jobs: usize,
}

pub const DEFAULT_MAX_NODES: usize = 100_000;
pub const DEFAULT_MAX_DEPTH: usize = 32;

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions {
            prune_below_index: None,
            memoize: true,
            max_depth: Some(DEFAULT_MAX_DEPTH),
            max_nodes: Some(DEFAULT_MAX_NODES),
            jobs: 0,
        }
    }
}

#[derive(Debug, Error)]
#[error("BudgetExceeded: {limit} reached after {} nodes", tree.nodes.len())]
pub struct BudgetExceeded {
    pub limit: String,
    pub tree: Box<ResolutionTree>,
}

/// Blow-up children of canonical representatives, in canonical coordinates
/// and sorted by (canonical key, facets).
pub type BlowupMemo = HashMap<ConeKey, Arc<Vec<Cone>>>;

fn sort_children(children: Vec<Cone>) -> Vec<(Cone, CanonicalForm)> {
    let mut keyed: Vec<(Cone, CanonicalForm)> = children.into_iter().map(|c| {
        let f = canonical_form(&c);
        (c, f)
    }).collect();
    keyed.sort_by(|a, b| a.1.key.cmp(&b.1.key).then_with(|| a.0.facets().cmp(b.0.facets())));
    keyed
}

pub fn resolution_tree(c: &Cone, opts: &ResolveOptions) -> Result<ResolutionTree, BudgetExceeded> {
    let mut memo = BlowupMemo::new();
    resolution_tree_with_memo(c, opts, &mut memo)
}

/// As [`resolution_tree`], reading and extending `memo` when memoization is on.
pub fn resolution_tree_with_memo(
    c: &Cone,
    opts: &ResolveOptions,
    memo: &mut BlowupMemo,
) -> Result<ResolutionTree, BudgetExceeded> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if opts.jobs > 0 {
        builder = builder.num_threads(opts.jobs);
    }
    match builder.build() {
        Ok(pool) => pool.install(|| build(c, opts, memo)),
        // no threads (e.g. wasm32): the global pool runs on the calling thread
        Err(_) => build(c, opts, memo),
    }
}

fn classify_status(cone: &Cone, index: &Int, depth: usize, opts: &ResolveOptions) -> NodeStatus {
    if cone.is_smooth() {
        NodeStatus::Smooth
    } else if depth > 0
        && cone.is_simplicial()
        && opts.prune_below_index.as_ref().is_some_and(|t| index < t)
    {
        NodeStatus::PrunedKnown
    } else if opts.max_depth.is_some_and(|m| depth >= m) {
        NodeStatus::PrunedDepth
    } else {
        NodeStatus::Expanded
    }
}

fn build(root: &Cone, opts: &ResolveOptions, memo: &mut BlowupMemo) -> Result<ResolutionTree, BudgetExceeded> {
    let mut nodes: Vec<TreeNode> = Vec::new();
    let mut forms: Vec<CanonicalForm> = Vec::new();
    let root_form = canonical_form(root);
    let index = root.index();
    let status = classify_status(root, &index, 0, opts);
    nodes.push(TreeNode {
        cone: root.clone(),
        key: root_form.key.clone(),
        index,
        dual_index: root.dual_index(),
        status,
        depth: 0,
        children: Vec::new(),
    });
    forms.push(root_form);
    let mut blowups = 0;
    let mut budget_hit: Option<String> = None;
    let mut frontier: Vec<usize> = if status == NodeStatus::Expanded { vec![0] } else { Vec::new() };

    while !frontier.is_empty() {
        // blow up every node of this level, sharing work between equivalent cones
        let results: Vec<Vec<(Cone, CanonicalForm)>> = if opts.memoize {
            let mut todo: Vec<&CanonicalForm> = Vec::new();
            let mut seen = HashSet::new();
            for &id in &frontier {
                let f = &forms[id];
                if !memo.contains_key(&f.key) && seen.insert(f.key.clone()) {
                    todo.push(f);
                }
            }
            let fresh: Vec<(ConeKey, Vec<Cone>)> = todo
                .par_iter()
                .map(|f| {
                    let kids = sort_children(nash_blowup(&f.cone)).into_iter().map(|(c, _)| c).collect();
                    (f.key.clone(), kids)
                })
                .collect();
            blowups += fresh.len();
            for (k, kids) in fresh {
                memo.entry(k).or_insert_with(|| Arc::new(kids));
            }
            frontier
                .par_iter()
                .map(|&id| {
                    let f = &forms[id];
                    let kids = memo.get(&f.key).expect("just computed");
                    let mapped = kids
                        .iter()
                        .map(|k| k.map_rays_with_inverse(&f.from_canonical, &f.to_canonical))
                        .collect();
                    sort_children(mapped)
                })
                .collect()
        } else {
            blowups += frontier.len();
            frontier.par_iter().map(|&id| sort_children(nash_blowup(&nodes[id].cone))).collect()
        };

        let added: usize = results.iter().map(Vec::len).sum();
        if let Some(limit) = opts.max_nodes {
            if nodes.len() + added > limit {
                for &id in &frontier {
                    nodes[id].status = NodeStatus::PrunedDepth;
                }
                budget_hit = Some(format!("max_nodes = {limit}"));
                break;
            }
        }

        let mut next = Vec::new();
        for (&parent, kids) in frontier.iter().zip(results) {
            let depth = nodes[parent].depth + 1;
            for (cone, form) in kids {
                let index = cone.index();
                let status = classify_status(&cone, &index, depth, opts);
                let id = nodes.len();
                if status == NodeStatus::Expanded {
                    next.push(id);
                } else if status == NodeStatus::PrunedDepth && budget_hit.is_none() {
                    budget_hit = Some(format!("max_depth = {}", opts.max_depth.unwrap_or(0)));
                }
                nodes.push(TreeNode {
                    dual_index: cone.dual_index(),
                    key: form.key.clone(),
                    cone,
                    index,
                    status,
                    depth,
                    children: Vec::new(),
                });
                forms.push(form);
                nodes[parent].children.push(id);
            }
        }
        frontier = next;
    }

    let tree = ResolutionTree { nodes, blowups };
    match budget_hit {
        Some(limit) => Err(BudgetExceeded { limit, tree: Box::new(tree) }),
        None => Ok(tree),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::canonical_key;

    fn cone(rows: &[&[i64]]) -> Cone {
        Cone::from_facet_rows(rows).unwrap()
    }

    fn labels(t: &ResolutionTree, id: usize) -> Vec<(i64, i64)> {
        let mut v: Vec<(i64, i64)> = t
            .node(id)
            .children
            .iter()
            .map(|&c| (t.node(c).index.to_i64().unwrap(), t.node(c).dual_index.to_i64().unwrap()))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn orthant_sum_set_and_blowup() {
        let o = Cone::orthant(3);
        assert_eq!(sum_set(&hilbert_basis(&o)), vec![IntVec::from_i64s(&[1, 1, 1])]);
        assert_eq!(nash_blowup(&o), vec![o.clone()]);
        let t = resolution_tree(&o, &ResolveOptions::default()).unwrap();
        let s = t.stats();
        assert_eq!((s.depth, s.size, s.max_facets, s.resolved), (0, 1, 3, true));
    }

    #[test]
    fn planar_sum_set() {
        let c = Cone::from_ray_rows(&[&[1, 0], &[4, 7]]).unwrap();
        // ten pairs, but (2,3)+(3,5) = (1,1)+(4,7)
        let s = sum_set(&hilbert_basis(&c));
        assert_eq!(s.len(), 9);
        assert!(s.contains(&IntVec::from_i64s(&[5, 8])));
    }

    #[test]
    fn c22_and_c44_blowups() {
        let kids = nash_blowup(&cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]));
        assert_eq!(kids.len(), 3);
        assert!(kids.iter().all(Cone::is_smooth));
        let c21 = canonical_key(&cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 1, 2]]));
        let kids = nash_blowup(&cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 2, 4]]));
        assert_eq!(kids.len(), 4);
        assert!(kids.iter().all(|k| canonical_key(k) == c21));
    }

    #[test]
    fn c33_tree() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 3]]);
        for memoize in [true, false] {
            let opts = ResolveOptions { memoize, ..Default::default() };
            let t = resolution_tree(&c, &opts).unwrap();
            let s = t.stats();
            assert_eq!((s.depth, s.size, s.resolved), (2, 9, true));
            assert_eq!(labels(&t, 0), vec![(1, 1), (1, 1), (1, 1), (1, 1), (3, 9)]);
        }
    }

    #[test]
    fn memo_does_not_change_tree() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 2, 5]]);
        let a = resolution_tree(&c, &ResolveOptions { memoize: true, ..Default::default() }).unwrap();
        let b = resolution_tree(&c, &ResolveOptions { memoize: false, ..Default::default() }).unwrap();
        assert_eq!(a.nodes().len(), b.nodes().len());
        for (x, y) in a.nodes().iter().zip(b.nodes()) {
            assert_eq!(x.cone, y.cone);
            assert_eq!(x.children, y.children);
            assert_eq!(x.status, y.status);
        }
        assert!(a.blowups_performed() < b.blowups_performed());
    }

    #[test]
    fn budgets() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 3]]);
        let err = resolution_tree(&c, &ResolveOptions { max_depth: Some(1), ..Default::default() }).unwrap_err();
        assert!(!err.tree.stats().resolved);
        let err = resolution_tree(&c, &ResolveOptions { max_nodes: Some(4), ..Default::default() }).unwrap_err();
        assert_eq!(err.tree.nodes().len(), 1);
    }

    #[test]
    fn pruning_at_root_index() {
        // C_{5,4} -> C_{5,6}, two pruned C_{3,2}, two smooth
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 5]]);
        let opts = ResolveOptions { prune_below_index: Some(Int::from(5)), ..Default::default() };
        let t = resolution_tree(&c, &opts).unwrap();
        let statuses: Vec<NodeStatus> = t.root().children.iter().map(|&i| t.node(i).status).collect();
        assert_eq!(statuses.iter().filter(|s| **s == NodeStatus::PrunedKnown).count(), 2);
        assert_eq!(statuses.iter().filter(|s| **s == NodeStatus::Smooth).count(), 2);
        assert_eq!(statuses.len(), 5);
    }
}
