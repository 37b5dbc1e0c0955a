use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{ComplexError, Result};
use crate::kernel::{hyperplane_side, orientation, point_in_simplex, Hyperplane, Point, Side, Sign, SimplexLocation};

/// Sorted vertex indices of a full-dimensional simplex.
pub type Facet = Vec<usize>;

/// A pure `m`-dimensional simplicial complex triangulating a convex region
/// of `R^m`. Immutable once built; mutations return new values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTriangulation", into = "RawTriangulation")]
pub struct Triangulation {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    ridges: BTreeMap<Vec<usize>, Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawTriangulation {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
}

impl TryFrom<RawTriangulation> for Triangulation {
    type Error = ComplexError;

    fn try_from(raw: RawTriangulation) -> Result<Self> {
        Triangulation::new(raw.dim, raw.vertices, raw.facets)
    }
}

impl From<Triangulation> for RawTriangulation {
    fn from(t: Triangulation) -> Self {
        RawTriangulation { dim: t.dim, vertices: t.vertices, facets: t.facets }
    }
}

/// Validating constructor; see [`Triangulation::new`].
pub fn build_triangulation(dim: usize, vertices: Vec<Point>, facets: Vec<Facet>) -> Result<Triangulation> {
    Triangulation::new(dim, vertices, facets)
}

impl Triangulation {
    /// Checks arity, nondegeneracy, the pseudomanifold property, local
    /// injectivity across interior ridges, convexity at boundary ridges,
    /// connectivity and single coverage of a generic point.
    pub fn new(dim: usize, vertices: Vec<Point>, facets: Vec<Facet>) -> Result<Self> {
        if dim < 2 {
            return Err(ComplexError::BadDimension(dim));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.dim() != dim {
                return Err(ComplexError::VertexDimension { vertex: i, expected: dim, got: v.dim() });
            }
        }
        let mut seen = BTreeSet::new();
        let mut sorted = Vec::with_capacity(facets.len());
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != dim + 1 {
                return Err(ComplexError::BadArity(f));
            }
            if s.iter().any(|&i| i >= vertices.len()) {
                return Err(ComplexError::VertexOutOfRange(f));
            }
            if !seen.insert(s.clone()) {
                return Err(ComplexError::DuplicateFacet(s));
            }
            sorted.push(s);
        }
        if sorted.is_empty() {
            return Err(ComplexError::Empty);
        }
        let t = Triangulation::from_parts(dim, vertices, sorted);
        t.validate()?;
        Ok(t)
    }

    /// Builds without geometric validation. Callers guarantee the invariants.
    pub(crate) fn from_parts(dim: usize, vertices: Vec<Point>, mut facets: Vec<Facet>) -> Self {
        facets.sort();
        let ridges = ridge_map(&facets);
        Triangulation { dim, vertices, facets, ridges }
    }

    fn validate(&self) -> Result<()> {
        let mut used = vec![false; self.vertices.len()];
        for f in &self.facets {
            if orientation(&self.points(f))? == Sign::Zero {
                return Err(ComplexError::DegenerateFacet(f.clone()));
            }
            for &v in f {
                used[v] = true;
            }
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(ComplexError::DanglingVertex(v));
        }
        for (ridge, fs) in &self.ridges {
            if fs.len() > 2 {
                return Err(ComplexError::NonManifoldRidge(ridge.clone()));
            }
            let h = Hyperplane::through(&self.points(ridge))?;
            let opp = self.opposite(fs[0], ridge);
            let side = hyperplane_side(&h, &self.vertices[opp])?;
            if fs.len() == 2 {
                let other = self.opposite(fs[1], ridge);
                if hyperplane_side(&h, &self.vertices[other])? == side {
                    return Err(ComplexError::FoldedRidge(ridge.clone()));
                }
            } else {
                let wrong = match side {
                    Side::Positive => Side::Negative,
                    _ => Side::Positive,
                };
                for v in &self.vertices {
                    if hyperplane_side(&h, v)? == wrong {
                        return Err(ComplexError::NonConvexBoundary(ridge.clone()));
                    }
                }
            }
        }
        if !self.dual_connected() {
            return Err(ComplexError::Disconnected);
        }
        // a locally injective complex over a convex region covers it some
        // constant number of times; one generic point covered once pins it to 1
        let first = &self.facets[0];
        let pts = self.points(first);
        let refs: Vec<&Point> = pts.iter().collect();
        let probe = Point::centroid(&refs)?;
        for f in &self.facets[1..] {
            if point_in_simplex(&self.points(f), &probe)? != SimplexLocation::Exterior {
                return Err(ComplexError::Overlap(first.clone(), f.clone()));
            }
        }
        Ok(())
    }

    fn dual_connected(&self) -> bool {
        let n = self.facets.len();
        let mut adj = vec![Vec::new(); n];
        for fs in self.ridges.values() {
            if let [a, b] = fs[..] {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Facets in lexicographic order.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn has_facet(&self, facet: &[usize]) -> bool {
        self.facets.binary_search_by(|f| f.as_slice().cmp(facet)).is_ok()
    }

    pub fn facet_index(&self, facet: &[usize]) -> Option<usize> {
        self.facets.binary_search_by(|f| f.as_slice().cmp(facet)).ok()
    }

    /// Coordinates of the given vertex ids.
    pub fn points(&self, ids: &[usize]) -> Vec<Point> {
        ids.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Each ridge with the indices (into [`Self::facets`]) of the one or two
    /// facets containing it.
    pub fn ridges(&self) -> &BTreeMap<Vec<usize>, Vec<usize>> {
        &self.ridges
    }

    /// Interior ridges with their two opposite vertices.
    pub fn interior_ridges(&self) -> impl Iterator<Item = (&Vec<usize>, usize, usize)> + '_ {
        self.ridges
            .iter()
            .filter(|(_, fs)| fs.len() == 2)
            .map(move |(r, fs)| (r, self.opposite(fs[0], r), self.opposite(fs[1], r)))
    }

    pub fn boundary_ridges(&self) -> impl Iterator<Item = &Vec<usize>> + '_ {
        self.ridges.iter().filter(|(_, fs)| fs.len() == 1).map(|(r, _)| r)
    }

    /// The vertex of facet `fi` not in `ridge`.
    pub fn opposite(&self, fi: usize, ridge: &[usize]) -> usize {
        *self.facets[fi].iter().find(|v| !ridge.contains(v)).expect("ridge is a proper subset of the facet")
    }

    /// Facets containing `v`.
    pub fn star(&self, v: usize) -> Vec<&Facet> {
        self.facets.iter().filter(|f| f.contains(&v)).collect()
    }

    pub fn vertex_degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.facets.iter().filter(|f| f.contains(&v)).count())
    }

    pub fn is_interior_vertex(&self, v: usize) -> Result<bool> {
        self.check_vertex(v)?;
        Ok(!self.boundary_ridges().any(|r| r.contains(&v)))
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertices.len() {
            Ok(())
        } else {
            Err(ComplexError::UnknownVertex(v))
        }
    }
}

fn ridge_map(facets: &[Facet]) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let mut map: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (fi, f) in facets.iter().enumerate() {
        for skip in 0..f.len() {
            let r: Vec<usize> = f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            map.entry(r).or_default().push(fi);
        }
    }
    map
}
