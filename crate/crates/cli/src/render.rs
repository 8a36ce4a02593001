//! Text, JSON and Graphviz renderings of resolution trees.

use std::collections::VecDeque;

use nash_core::classify::{identify, letter};
use nash_core::lattice::{Int, IntVec};
use nash_core::nash::{NodeStatus, ResolutionTree, TreeNode};
use nash_core::polyhedral::{canonical_key, Cone};
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

/// One line per node, depth-first, two spaces of indent per level.
pub fn text(tree: &ResolutionTree) -> String {
    let mut out = String::new();
    let mut stack = vec![0];
    while let Some(id) = stack.pop() {
        let n = tree.node(id);
        out.push_str(&"  ".repeat(n.depth));
        out.push_str(&format!("{} [{},{}]", n.cone.presentation(), n.index, n.dual_index));
        match n.status {
            NodeStatus::PrunedKnown => out.push_str(" (pruned)"),
            NodeStatus::PrunedDepth => out.push_str(" (unexpanded)"),
            _ => {}
        }
        out.push('\n');
        stack.extend(n.children.iter().rev());
    }
    out
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct JsonNode {
    pub dim: String,
    pub rays: Vec<Vec<String>>,
    pub facets: Vec<Vec<String>>,
    #[serde(rename = "I")]
    pub index: String,
    #[serde(rename = "Istar")]
    pub dual_index: String,
    pub children: Vec<JsonNode>,
    pub status: String,
}

pub fn matrix_strings(rows: &[IntVec]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(Int::to_string).collect()).collect()
}

pub fn parse_matrix(rows: &[Vec<String>]) -> CliResult<Vec<IntVec>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.parse::<Int>().map_err(|_| CliError::Input(format!("not an integer: {x:?}"))))
                .collect::<CliResult<Vec<Int>>>()
                .map(IntVec)
        })
        .collect()
}

fn json_node(tree: &ResolutionTree, id: usize) -> JsonNode {
    let n = tree.node(id);
    JsonNode {
        dim: n.cone.dim().to_string(),
        rays: matrix_strings(n.cone.rays()),
        facets: matrix_strings(n.cone.facets()),
        index: n.index.to_string(),
        dual_index: n.dual_index.to_string(),
        children: n.children.iter().map(|&c| json_node(tree, c)).collect(),
        status: n.status.as_str().to_string(),
    }
}

pub fn json(tree: &ResolutionTree) -> String {
    let mut s = serde_json::to_string(&json_node(tree, 0)).expect("tree serializes");
    s.push('\n');
    s
}

/// Rebuilds a tree from its JSON form, recomputing keys from the cones.
pub fn parse_json(s: &str) -> CliResult<ResolutionTree> {
    let root: JsonNode = serde_json::from_str(s).map_err(|e| CliError::Input(format!("bad tree json: {e}")))?;
    let mut nodes: Vec<TreeNode> = Vec::new();
    let mut queue: VecDeque<(&JsonNode, usize, Option<usize>)> = VecDeque::from([(&root, 0, None)]);
    while let Some((j, depth, parent)) = queue.pop_front() {
        let cone = Cone::from_rays(&parse_matrix(&j.rays)?)?;
        if cone.facets() != parse_matrix(&j.facets)?.as_slice() {
            return Err(CliError::Input("facets do not match rays".into()));
        }
        let status = NodeStatus::parse(&j.status).ok_or_else(|| CliError::Input(format!("bad status {:?}", j.status)))?;
        let id = nodes.len();
        nodes.push(TreeNode {
            key: canonical_key(&cone),
            index: cone.index(),
            dual_index: cone.dual_index(),
            cone,
            status,
            depth,
            children: Vec::new(),
        });
        if let Some(p) = parent {
            nodes[p].children.push(id);
        }
        for c in &j.children {
            queue.push_back((c, depth + 1, Some(id)));
        }
    }
    Ok(ResolutionTree::from_nodes(nodes))
}

/// Class name for simplicial cones whose class table is cheap to build.
pub fn class_label(c: &Cone) -> Option<String> {
    let limit = match c.dim() {
        1 | 2 => 500,
        3 => 40,
        4 => 10,
        _ => 4,
    };
    let i = c.index().to_i64()?;
    if !c.is_simplicial() || i > limit {
        return None;
    }
    identify(c).map(|k| k.name)
}

/// `C_{3,4}` for named simplicial cones, `C(5)` for a 3-D cone with five facets.
pub fn node_label(c: &Cone) -> String {
    class_label(c).unwrap_or_else(|| {
        if c.is_simplicial() {
            format!("{}[{},{}]", letter(c.dim()), c.index(), c.dual_index())
        } else {
            format!("{}({})", letter(c.dim()), c.facets().len())
        }
    })
}

/// A node of the collapsed tree: identical sibling subtrees merged, smooth leaves bundled.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Shape {
    pub label: String,
    pub children: Vec<(usize, Shape)>,
    pub smooth: usize,
}

pub fn shape(tree: &ResolutionTree, id: usize) -> Shape {
    let n = tree.node(id);
    let mut children: Vec<(usize, Shape)> = Vec::new();
    let mut smooth = 0;
    for &c in &n.children {
        if tree.node(c).status == NodeStatus::Smooth {
            smooth += 1;
            continue;
        }
        let s = shape(tree, c);
        match children.iter_mut().find(|(_, t)| *t == s) {
            Some((m, _)) => *m += 1,
            None => children.push((1, s)),
        }
    }
    Shape { label: node_label(&n.cone), children, smooth }
}

impl Shape {
    /// Same layout as the golden shape files: `k Label` for repeats, `(k)` for smooth bundles.
    pub fn lines(&self, mult: usize, depth: usize, out: &mut Vec<String>) {
        let indent = "  ".repeat(depth);
        if mult > 1 {
            out.push(format!("{indent}{mult} {}", self.label));
        } else {
            out.push(format!("{indent}{}", self.label));
        }
        for (m, c) in &self.children {
            c.lines(*m, depth + 1, out);
        }
        if self.smooth > 0 {
            out.push(format!("{indent}  ({})", self.smooth));
        }
    }

    /// Children sorted recursively, for order-insensitive comparison.
    pub fn normalized(&self) -> Shape {
        let mut children: Vec<(usize, Shape)> = self.children.iter().map(|(m, c)| (*m, c.normalized())).collect();
        children.sort();
        Shape { label: self.label.clone(), children, smooth: self.smooth }
    }
}

pub fn dot(tree: &ResolutionTree) -> String {
    let mut out = String::from("digraph resolution {\n  node [shape=box, fontname=\"Helvetica\"];\n");
    let mut next = 0;
    emit_dot(tree, 0, 1, &mut next, &mut out);
    out.push_str("}\n");
    out
}

fn emit_dot(tree: &ResolutionTree, id: usize, mult: usize, next: &mut usize, out: &mut String) -> usize {
    let n = tree.node(id);
    let me = *next;
    *next += 1;
    let prefix = if mult > 1 { format!("{mult}× ") } else { String::new() };
    let style = if n.cone.is_simplicial() { "" } else { ", style=rounded" };
    let note = match n.status {
        NodeStatus::PrunedKnown => "\\n(pruned)",
        NodeStatus::PrunedDepth => "\\n(unexpanded)",
        _ => "",
    };
    out.push_str(&format!(
        "  n{me} [label=\"{prefix}{}\\n[{},{}]{note}\"{style}];\n",
        node_label(&n.cone),
        n.index,
        n.dual_index
    ));
    let mut smooth = 0;
    for (m, c) in tree.collapsed_children(id) {
        if tree.node(c).status == NodeStatus::Smooth {
            smooth += m;
            continue;
        }
        let child = emit_dot(tree, c, m, next, out);
        out.push_str(&format!("  n{me} -> n{child};\n"));
    }
    if smooth > 0 {
        let leaf = *next;
        *next += 1;
        out.push_str(&format!("  n{leaf} [label=\"{smooth}\", shape=circle];\n  n{me} -> n{leaf};\n"));
    }
    me
}
