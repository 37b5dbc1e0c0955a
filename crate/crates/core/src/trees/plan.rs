use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{DualTree, Result, TreeError};

/// A child of a plan node, optionally naming which of the `d` simplices
/// created by the parent's subdivision it subdivides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChildEdge {
    pub node: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face: Option<usize>,
}

impl ChildEdge {
    pub fn unlabeled(node: usize) -> Self {
        ChildEdge { node, face: None }
    }

    pub fn labeled(node: usize, face: usize) -> Self {
        ChildEdge { node, face: Some(face) }
    }
}

/// Rooted tree of stellar subdivisions: the root is the first subdivision
/// of the initial simplex, and each child subdivides one of the simplices
/// created at its parent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPlan", into = "RawPlan")]
pub struct RootedPlan {
    root: usize,
    children: BTreeMap<usize, Vec<ChildEdge>>,
}

#[derive(Serialize, Deserialize)]
struct RawPlan {
    root: usize,
    #[serde(default)]
    children: BTreeMap<usize, Vec<ChildEdge>>,
}

impl TryFrom<RawPlan> for RootedPlan {
    type Error = TreeError;

    fn try_from(r: RawPlan) -> Result<Self> {
        RootedPlan::new(r.root, r.children)
    }
}

impl From<RootedPlan> for RawPlan {
    fn from(p: RootedPlan) -> Self {
        RawPlan { root: p.root, children: p.children }
    }
}

impl RootedPlan {
    pub fn new(root: usize, children: BTreeMap<usize, Vec<ChildEdge>>) -> Result<Self> {
        let mut children = children;
        children.retain(|_, c| !c.is_empty());
        let mut has_parent = BTreeSet::new();
        for (&v, cs) in &children {
            let mut labels = BTreeSet::new();
            for c in cs {
                if c.node == root || !has_parent.insert(c.node) {
                    return Err(TreeError::NotATree(c.node));
                }
                if let Some(f) = c.face {
                    if !labels.insert(f) {
                        return Err(TreeError::DuplicateLabel(v));
                    }
                }
            }
        }
        let plan = RootedPlan { root, children };
        let reached = plan.preorder();
        if reached.len() != has_parent.len() + 1 {
            let missing = plan
                .children
                .keys()
                .copied()
                .chain(has_parent.iter().copied())
                .find(|v| !reached.contains(v))
                .unwrap_or(root);
            return Err(TreeError::NotATree(missing));
        }
        Ok(plan)
    }

    /// A single node.
    pub fn leaf(root: usize) -> Self {
        RootedPlan { root, children: BTreeMap::new() }
    }

    /// Nodes `0..n` in a chain rooted at 0.
    pub fn chain(n: usize, label: Option<usize>) -> Self {
        let children = (1..n).map(|i| (i - 1, vec![ChildEdge { node: i, face: label }])).collect();
        RootedPlan::new(0, children).expect("chain is a tree")
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn children(&self, v: usize) -> &[ChildEdge] {
        self.children.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        1 + self.children.values().map(Vec::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Depth-first preorder, children in listed order. Guards against cycles.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            out.push(v);
            for c in self.children(v).iter().rev() {
                stack.push(c.node);
            }
        }
        out
    }

    /// The part of the plan below `v`, rooted at `v`, with ids kept.
    pub fn subtree(&self, v: usize) -> Result<RootedPlan> {
        if !self.preorder().contains(&v) {
            return Err(TreeError::UnknownNode(v));
        }
        let below = RootedPlan { root: v, children: self.children.clone() }.preorder();
        let children = below.iter().map(|u| (*u, self.children(*u).to_vec())).collect();
        RootedPlan::new(v, children)
    }

    /// Underlying unrooted tree with nodes renumbered by preorder position.
    pub fn to_tree(&self) -> (DualTree, Vec<usize>) {
        let order = self.preorder();
        let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<(usize, usize)> =
            order.iter().flat_map(|v| self.children(*v).iter().map(|c| (pos[v], pos[&c.node]))).collect();
        (DualTree::new(order.len(), edges).expect("plan is a tree"), order)
    }
}

/// Orients `t` away from `root`; children are listed by increasing id.
pub fn root_plan(t: &DualTree, root: usize) -> Result<RootedPlan> {
    if !t.contains(root) {
        return Err(TreeError::UnknownNode(root));
    }
    let order = t.bfs_order(root);
    let mut seen = vec![false; t.len()];
    let mut children = BTreeMap::new();
    for &v in &order {
        seen[v] = true;
        let cs: Vec<ChildEdge> =
            t.neighbors(v).iter().filter(|&&w| !seen[w]).map(|&w| ChildEdge::unlabeled(w)).collect();
        children.insert(v, cs);
    }
    RootedPlan::new(root, children)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Buildability {
    Ok,
    TooManyChildren { node: usize },
    LabelOutOfRange { node: usize },
}

/// A plan is realizable as a Delaunay triangulation iff no node (the root
/// included) has more than two children. Labels must lie in `0..d`.
pub fn plan_is_buildable(p: &RootedPlan, d: usize) -> Buildability {
    for v in p.preorder() {
        let cs = p.children(v);
        if cs.len() > 2 {
            return Buildability::TooManyChildren { node: v };
        }
        if cs.iter().any(|c| c.face.is_some_and(|f| f >= d)) {
            return Buildability::LabelOutOfRange { node: v };
        }
    }
    Buildability::Ok
}
