use std::collections::BTreeMap;

use super::{unrooted_canonical, DualTree};

/// All unlabeled trees with exactly `n` nodes, one representative per
/// isomorphism class, ordered by canonical form.
pub fn all_trees(n: usize) -> Vec<DualTree> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![DualTree::single()];
    for size in 1..n {
        let mut next: BTreeMap<String, DualTree> = BTreeMap::new();
        for t in &level {
            for v in 0..size {
                let mut edges = t.edges();
                edges.push((v, size));
                let grown = DualTree::new(size + 1, edges).expect("adding a leaf keeps a tree");
                next.entry(unrooted_canonical(&grown)).or_insert(grown);
            }
        }
        level = next.into_values().collect();
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        let counts: Vec<usize> = (1..=10).map(|n| all_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }
}
