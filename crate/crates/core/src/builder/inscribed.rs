use std::collections::BTreeMap;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{BuildError, Result};
use crate::complex::{check_delaunay, DelaunayMode, Triangulation};
use crate::kernel::{hyperplane_side, inverse_stereographic, north_pole, Hyperplane, Point, Side};

/// A simplicial `d`-polytope with all vertices on the unit sphere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InscribedPolytope {
    pub d: usize,
    pub north: usize,
    pub vertices: Vec<Point>,
    /// Sorted vertex ids, `d` per facet, in lexicographic order.
    pub facets: Vec<Vec<usize>>,
}

impl InscribedPolytope {
    pub fn new(d: usize, north: usize, vertices: Vec<Point>, mut facets: Vec<Vec<usize>>) -> Self {
        for f in &mut facets {
            f.sort_unstable();
        }
        facets.sort();
        InscribedPolytope { d, north, vertices, facets }
    }

    /// Same polytope with vertex `i` renamed `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let mut vertices = vec![Point::origin(self.d); self.vertices.len()];
        for (i, v) in self.vertices.iter().enumerate() {
            vertices[perm[i]] = v.clone();
        }
        let facets = self.facets.iter().map(|f| f.iter().map(|&v| perm[v]).collect()).collect();
        InscribedPolytope::new(self.d, perm[self.north], vertices, facets)
    }

    /// Unordered vertex pairs sharing a facet.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .facets
            .iter()
            .flat_map(|f| f.iter().enumerate().flat_map(move |(i, &a)| f[i + 1..].iter().map(move |&b| (a, b))))
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for (a, b) in self.edges() {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }
}

/// Lifts a Delaunay triangulation of `R^{d-1}` to the unit sphere of `R^d`
/// by inverse stereographic projection and adds the north pole as the last
/// vertex. Facets missing the pole are the triangulation's facets; facets
/// through the pole are its boundary ridges joined with the pole.
pub fn lift_delaunay(t: &Triangulation) -> Result<InscribedPolytope> {
    if !check_delaunay(t, DelaunayMode::FacetsEmpty)?.ok {
        return Err(BuildError::NotDelaunay);
    }
    let d = t.dim() + 1;
    let north = t.num_vertices();
    let boundary: Vec<&Vec<usize>> = t.boundary_ridges().collect();
    // two boundary ridges in one supporting hyperplane would lift to one
    // non-simplex facet; coplanar ridges always include an adjacent pair
    let mut planes: BTreeMap<Vec<usize>, Hyperplane> = BTreeMap::new();
    for r in &boundary {
        planes.insert((*r).clone(), Hyperplane::through(&t.points(r))?);
    }
    for (i, r) in boundary.iter().enumerate() {
        for s in &boundary[i + 1..] {
            let shared = r.iter().filter(|v| s.contains(v)).count();
            if shared + 1 != r.len() {
                continue;
            }
            let extra = *s.iter().find(|v| !r.contains(v)).expect("ridges differ");
            if hyperplane_side(&planes[*r], t.vertex(extra))? == Side::On {
                return Err(BuildError::NotSimplicial((*r).clone(), (*s).clone()));
            }
        }
    }
    let mut vertices: Vec<Point> = t.vertices().iter().map(inverse_stereographic).collect();
    vertices.push(north_pole(d));
    let mut facets: Vec<Vec<usize>> = t.facets().to_vec();
    for r in boundary {
        let mut f = r.clone();
        f.push(north);
        facets.push(f);
    }
    Ok(InscribedPolytope::new(d, north, vertices, facets))
}

/// [`lift_delaunay`] for a triangulation whose support is a simplex with no
/// other vertices on its boundary; adds exactly `d` facets through the pole.
pub fn lift_to_inscribed(t: &Triangulation) -> Result<InscribedPolytope> {
    if t.boundary_ridges().count() != t.dim() + 1 {
        return Err(BuildError::SupportNotSimplex);
    }
    lift_delaunay(t)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InscribedViolation {
    NotOnSphere { vertex: usize },
    NorthNotPole { vertex: usize },
    WrongDimension { vertex: usize },
    BadFacet { facet: Vec<usize> },
    DegenerateFacet { facet: Vec<usize> },
    NotSupporting { facet: Vec<usize>, witness: usize },
    RidgeNotShared { ridge: Vec<usize>, count: usize },
    UnusedVertex { vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InscribedReport {
    pub ok: bool,
    pub violations: Vec<InscribedViolation>,
}

/// Exact checks: every vertex has norm 1, `north` is `e_d`, every facet
/// spans a hyperplane with all other vertices strictly on one side, every
/// ridge lies in exactly two facets, and every vertex is on some facet.
pub fn verify_inscribed(p: &InscribedPolytope) -> InscribedReport {
    use InscribedViolation as V;
    let d = p.d;
    let n = p.vertices.len();
    let mut out = Vec::new();
    let mut dims_ok = true;
    for (i, v) in p.vertices.iter().enumerate() {
        if v.dim() != d {
            out.push(V::WrongDimension { vertex: i });
            dims_ok = false;
        } else if !v.norm_sq().is_one() {
            out.push(V::NotOnSphere { vertex: i });
        }
    }
    if p.north >= n || (dims_ok && p.vertices[p.north] != north_pole(d)) {
        out.push(V::NorthNotPole { vertex: p.north });
    }
    if !dims_ok {
        return InscribedReport { ok: false, violations: out };
    }
    let mut used = vec![false; n];
    let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut good = Vec::new();
    for f in &p.facets {
        let mut s = f.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != d || s.iter().any(|&v| v >= n) {
            out.push(V::BadFacet { facet: f.clone() });
            continue;
        }
        for &v in &s {
            used[v] = true;
        }
        for skip in 0..d {
            let r: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            *ridges.entry(r).or_default() += 1;
        }
        good.push(s);
    }
    let per_facet: Vec<Vec<InscribedViolation>> = good
        .par_iter()
        .map(|f| {
            let pts: Vec<Point> = f.iter().map(|&i| p.vertices[i].clone()).collect();
            let Ok(h) = Hyperplane::through(&pts) else {
                return vec![V::DegenerateFacet { facet: f.clone() }];
            };
            let mut reference = None;
            for (q, v) in p.vertices.iter().enumerate() {
                if f.contains(&q) {
                    continue;
                }
                let side = hyperplane_side(&h, v).expect("dimensions checked");
                let bad = side == Side::On || reference.is_some_and(|r| r != side);
                if bad {
                    return vec![V::NotSupporting { facet: f.clone(), witness: q }];
                }
                reference = Some(side);
            }
            Vec::new()
        })
        .collect();
    out.extend(per_facet.into_iter().flatten());
    for (r, c) in ridges {
        if c != 2 {
            out.push(V::RidgeNotShared { ridge: r, count: c });
        }
    }
    for (v, u) in used.iter().enumerate() {
        if !u {
            out.push(V::UnusedVertex { vertex: v });
        }
    }
    out.sort();
    InscribedReport { ok: out.is_empty(), violations: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::init_root;
    use crate::kernel::{int, stereographic_project};

    #[test]
    fn lifted_root_is_stacked_tetrahedron() {
        let t = init_root(3, &int(1)).unwrap();
        let p = lift_to_inscribed(&t).unwrap();
        assert_eq!(p.vertices.len(), 5);
        assert_eq!(p.facets.len(), 6);
        assert_eq!(p.north, 4);
        let r = verify_inscribed(&p);
        assert!(r.ok, "{:?}", r.violations);
        for (i, v) in t.vertices().iter().enumerate() {
            assert_eq!(&stereographic_project(&p.vertices[i]).unwrap(), v);
        }
    }

    #[test]
    fn corruptions_are_reported() {
        let p = lift_to_inscribed(&init_root(3, &int(1)).unwrap()).unwrap();
        let mut scaled = p.clone();
        scaled.vertices[1] = scaled.vertices[1].scale(&int(2));
        let r = verify_inscribed(&scaled);
        assert!(r.violations.contains(&InscribedViolation::NotOnSphere { vertex: 1 }));
        let mut missing = p.clone();
        missing.facets.pop();
        let r = verify_inscribed(&missing);
        assert!(r.violations.iter().any(|v| matches!(v, InscribedViolation::RidgeNotShared { .. })));
    }
}
