use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{DualTree, Result, TreeError};

/// One stacking: `vertex` is placed beyond `facet`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackStep {
    pub vertex: usize,
    pub facet: Vec<usize>,
}

/// A way to build a stacked polytope: start from the simplex on `base`, then
/// apply `steps` in order. Node `0` of the matching dual tree is the base
/// simplex and node `i + 1` the simplex glued by step `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackingOrder {
    pub base: Vec<usize>,
    pub steps: Vec<StackStep>,
}

/// Recovers the dual tree of a stacked `d`-polytope from its boundary facets
/// (`d` vertices each) by repeatedly removing the smallest simple vertex whose
/// link is not already a facet.
pub fn extract_dual_tree(facets: &[Vec<usize>], d: usize) -> Result<(DualTree, StackingOrder)> {
    let mut current: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        let mut s = f.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != d || !current.insert(s) {
            return Err(TreeError::BadFacet(f.clone(), d));
        }
    }
    let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for f in &current {
        for skip in 0..d {
            let r: Vec<usize> = f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            *ridges.entry(r).or_default() += 1;
        }
    }
    if let Some((r, &c)) = ridges.iter().find(|(_, &c)| c != 2) {
        return Err(TreeError::NotClosed(r.clone(), c));
    }

    let mut peeled: Vec<StackStep> = Vec::new();
    loop {
        let verts: BTreeSet<usize> = current.iter().flatten().copied().collect();
        if verts.len() == d + 1 && current.len() == d + 1 {
            break;
        }
        let mut found = None;
        for &v in &verts {
            let star: Vec<&Vec<usize>> = current.iter().filter(|f| f.contains(&v)).collect();
            if star.len() != d {
                continue;
            }
            let link: BTreeSet<usize> = star.iter().flat_map(|f| f.iter().copied()).filter(|&u| u != v).collect();
            let link: Vec<usize> = link.into_iter().collect();
            if link.len() == d && !current.contains(&link) {
                found = Some((v, link));
                break;
            }
        }
        let Some((v, link)) = found else {
            return Err(TreeError::NotStacked(verts.len()));
        };
        current.retain(|f| !f.contains(&v));
        current.insert(link.clone());
        peeled.push(StackStep { vertex: v, facet: link });
    }

    let base: Vec<usize> = current.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    peeled.reverse();
    let mut simplices: Vec<BTreeSet<usize>> = vec![base.iter().copied().collect()];
    for s in &peeled {
        let mut simplex: BTreeSet<usize> = s.facet.iter().copied().collect();
        simplex.insert(s.vertex);
        simplices.push(simplex);
    }
    let mut edges = Vec::new();
    for i in 0..simplices.len() {
        for j in i + 1..simplices.len() {
            if simplices[i].intersection(&simplices[j]).count() == d {
                edges.push((i, j));
            }
        }
    }
    let tree = DualTree::new(simplices.len(), edges)?;
    Ok((tree, StackingOrder { base, steps: peeled }))
}

/// Boundary facets of the stacked `d`-polytope obtained from the simplex on
/// `0..=d` by stacking vertex `d + 1 + i` onto facet `choices[i]` of the
/// current facet list (kept sorted). Returns the facets and the dual tree,
/// where node `i + 1` is the simplex of the `i`-th stacking.
pub fn stacked_boundary(d: usize, choices: &[usize]) -> Result<(Vec<Vec<usize>>, DualTree)> {
    let mut facets: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for skip in 0..=d {
        facets.insert((0..=d).filter(|&v| v != skip).collect(), 0);
    }
    let mut edges = Vec::new();
    for (i, &c) in choices.iter().enumerate() {
        let (f, owner) = facets.iter().nth(c).map(|(f, &o)| (f.clone(), o)).ok_or(TreeError::FacetOutOfRange(c))?;
        let node = i + 1;
        let v = d + 1 + i;
        edges.push((owner, node));
        facets.remove(&f);
        for skip in 0..d {
            let mut g: Vec<usize> = f.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &u)| u).collect();
            g.push(v);
            facets.insert(g, node);
        }
    }
    let tree = DualTree::new(choices.len() + 1, edges)?;
    Ok((facets.into_keys().collect(), tree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::unrooted_canonical;

    #[test]
    fn simplex_boundary() {
        let (facets, _) = stacked_boundary(3, &[]).unwrap();
        let (t, order) = extract_dual_tree(&facets, 3).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(order.base, vec![0, 1, 2, 3]);
    }

    #[test]
    fn one_stacking() {
        let (facets, tree) = stacked_boundary(4, &[2]).unwrap();
        assert_eq!(facets.len(), 5 + 3);
        let (t, order) = extract_dual_tree(&facets, 4).unwrap();
        assert_eq!(t.edges(), vec![(0, 1)]);
        assert_eq!(order.steps.len(), 1);
        assert_eq!(unrooted_canonical(&t), unrooted_canonical(&tree));
    }

    #[test]
    fn stacking_on_every_facet_gives_star() {
        let mut facets = Vec::new();
        for missing in 0..4 {
            let base: Vec<usize> = (0..4).filter(|&v| v != missing).collect();
            for skip in 0..3 {
                let mut f: Vec<usize> = base.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &u)| u).collect();
                f.push(4 + missing);
                facets.push(f);
            }
        }
        let (t, _) = extract_dual_tree(&facets, 3).unwrap();
        assert_eq!(unrooted_canonical(&t), unrooted_canonical(&DualTree::star(4)));
    }

    #[test]
    fn rejects_non_stacked_and_open_complexes() {
        // octahedron: every vertex has degree 4
        let oct = vec![
            vec![0, 2, 4],
            vec![0, 2, 5],
            vec![0, 3, 4],
            vec![0, 3, 5],
            vec![1, 2, 4],
            vec![1, 2, 5],
            vec![1, 3, 4],
            vec![1, 3, 5],
        ];
        assert_eq!(extract_dual_tree(&oct, 3).map(|_| ()), Err(TreeError::NotStacked(6)));
        let open = vec![vec![0, 1, 2], vec![0, 1, 3]];
        assert!(matches!(extract_dual_tree(&open, 3), Err(TreeError::NotClosed(_, 1))));
    }
}
