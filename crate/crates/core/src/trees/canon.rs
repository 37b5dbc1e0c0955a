use super::{DualTree, RootedPlan};

fn encode(v: usize, children: &dyn Fn(usize) -> Vec<usize>) -> String {
    let mut parts: Vec<String> = children(v).into_iter().map(|c| encode(c, children)).collect();
    parts.sort();
    format!("({})", parts.concat())
}

/// Canonical string of `t` rooted at `root`; equal strings iff the rooted
/// trees are isomorphic.
pub fn rooted_canonical(t: &DualTree, root: usize) -> String {
    let mut parent = vec![usize::MAX; t.len()];
    for v in t.bfs_order(root) {
        for &w in t.neighbors(v) {
            if w != root && parent[w] == usize::MAX && parent[v] != w {
                parent[w] = v;
            }
        }
    }
    let children = |v: usize| t.neighbors(v).iter().copied().filter(|&w| parent[w] == v).collect();
    encode(root, &children)
}

impl RootedPlan {
    /// Rooted canonical form ignoring face labels.
    pub fn canonical(&self) -> String {
        encode(self.root(), &|v| self.children(v).iter().map(|c| c.node).collect())
    }
}

/// Canonical string of an unrooted tree: the least rooted form over its
/// one or two centers.
pub fn unrooted_canonical(t: &DualTree) -> String {
    centers(t).into_iter().map(|c| rooted_canonical(t, c)).min().expect("trees are nonempty")
}

fn centers(t: &DualTree) -> Vec<usize> {
    let n = t.len();
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in t.neighbors(v) {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphic_relabelings_agree() {
        let a = DualTree::new(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let b = DualTree::new(5, [(4, 3), (3, 0), (3, 2), (0, 1)]).unwrap();
        assert_eq!(unrooted_canonical(&a), unrooted_canonical(&b));
        let path = DualTree::path(5).unwrap();
        assert_ne!(unrooted_canonical(&a), unrooted_canonical(&path));
    }

    #[test]
    fn rooted_forms_distinguish_roots() {
        let path = DualTree::path(3).unwrap();
        assert_eq!(rooted_canonical(&path, 0), "((()))");
        assert_eq!(rooted_canonical(&path, 1), "(()())");
        assert_ne!(rooted_canonical(&path, 0), rooted_canonical(&path, 1));
        assert_eq!(rooted_canonical(&path, 0), rooted_canonical(&path, 2));
        assert_eq!(RootedPlan::chain(3, None).canonical(), rooted_canonical(&path, 0));
    }

    #[test]
    fn centers_of_small_trees() {
        assert_eq!(centers(&DualTree::single()), vec![0]);
        assert_eq!(centers(&DualTree::path(2).unwrap()), vec![0, 1]);
        assert_eq!(centers(&DualTree::path(5).unwrap()), vec![2]);
        assert_eq!(centers(&DualTree::path(4).unwrap()), vec![1, 2]);
        assert_eq!(centers(&DualTree::star(4)), vec![0]);
    }
}
