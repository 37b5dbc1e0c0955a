use serde::{Deserialize, Serialize};

use super::{Result, TreeError};

/// An unrooted tree on nodes `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTree", into = "RawTree")]
pub struct DualTree {
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawTree {
    nodes: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawTree> for DualTree {
    type Error = TreeError;

    fn try_from(r: RawTree) -> Result<Self> {
        DualTree::new(r.nodes, r.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<DualTree> for RawTree {
    fn from(t: DualTree) -> Self {
        RawTree { nodes: t.len(), edges: t.edges().into_iter().map(|(a, b)| [a, b]).collect() }
    }
}

impl DualTree {
    pub fn new(nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if nodes == 0 {
            return Err(TreeError::EmptyTree);
        }
        let mut adj = vec![Vec::new(); nodes];
        let mut count = 0;
        for (a, b) in edges {
            if a >= nodes || b >= nodes || a == b || adj[a].contains(&b) {
                return Err(TreeError::BadEdge(a, b));
            }
            adj[a].push(b);
            adj[b].push(a);
            count += 1;
        }
        if count != nodes - 1 {
            return Err(TreeError::EdgeCount { nodes, expected: nodes - 1, got: count });
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let t = DualTree { adj };
        if t.bfs_order(0).len() != nodes {
            return Err(TreeError::NotConnected);
        }
        Ok(t)
    }

    pub fn single() -> Self {
        DualTree { adj: vec![Vec::new()] }
    }

    pub fn path(n: usize) -> Result<Self> {
        DualTree::new(n, (1..n).map(|i| (i - 1, i)))
    }

    /// `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Self {
        DualTree::new(k + 1, (1..=k).map(|i| (0, i))).expect("star is a tree")
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.adj.len()
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect();
        e.sort_unstable();
        e
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.degree(v) == 1).collect()
    }

    pub(crate) fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut order = vec![root];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            for &w in &self.adj[order[i]] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
        order
    }

    /// The tree with node `v` removed, if that leaves a tree; remaining nodes
    /// are renumbered in increasing order. Also returns the old ids.
    pub fn remove_leaf(&self, v: usize) -> Result<(DualTree, Vec<usize>)> {
        if !self.contains(v) {
            return Err(TreeError::UnknownNode(v));
        }
        if self.len() < 2 || self.degree(v) != 1 {
            return Err(TreeError::TooSmall);
        }
        let old: Vec<usize> = (0..self.len()).filter(|&u| u != v).collect();
        let new_id = |u: usize| if u > v { u - 1 } else { u };
        let edges = self.edges().into_iter().filter(|&(a, b)| a != v && b != v).map(|(a, b)| (new_id(a), new_id(b)));
        Ok((DualTree::new(self.len() - 1, edges)?, old))
    }
}

/// Maximum node degree and the smallest node attaining it.
pub fn max_degree(t: &DualTree) -> (usize, usize) {
    let mut best = (0, 0);
    for v in 0..t.len() {
        if t.degree(v) > best.0 {
            best = (t.degree(v), v);
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Decision {
    Inscribable,
    NotInscribable { witness: usize, degree: usize },
}

/// A stacked polytope is inscribable iff every node of its dual tree has
/// degree at most 3.
pub fn decide_inscribable(t: &DualTree) -> Decision {
    let (degree, witness) = max_degree(t);
    if degree <= 3 {
        Decision::Inscribable
    } else {
        Decision::NotInscribable { witness, degree }
    }
}

/// Simple vertices of the stacked polytope with dual tree `t`: one per leaf.
pub fn count_simple_vertices(t: &DualTree) -> Result<usize> {
    if t.len() < 2 {
        return Err(TreeError::TooSmall);
    }
    Ok(t.leaves().len())
}
