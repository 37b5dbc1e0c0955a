use std::collections::BTreeSet;

use super::{ComplexError, Facet, Result, Triangulation};
use crate::kernel::{point_in_simplex, KernelError, Point, SimplexLocation};

/// Replaces `facet` by the `m + 1` simplices joining `p` to its ridges.
/// The new vertex gets the next free index.
pub fn stellar_subdivide(t: &Triangulation, facet: &[usize], p: Point) -> Result<Triangulation> {
    let mut key = facet.to_vec();
    key.sort_unstable();
    let fi = t.facet_index(&key).ok_or_else(|| ComplexError::UnknownFacet(key.clone()))?;
    if p.dim() != t.dim() {
        return Err(KernelError::DimensionMismatch { expected: t.dim(), got: p.dim() }.into());
    }
    if point_in_simplex(&t.points(&key), &p)? != SimplexLocation::Interior {
        return Err(ComplexError::NotInterior);
    }
    let new = t.num_vertices();
    let mut facets: Vec<Facet> = t.facets().to_vec();
    facets.remove(fi);
    for skip in 0..key.len() {
        let mut f: Facet = key.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
        f.push(new);
        facets.push(f);
    }
    let mut vertices = t.vertices().to_vec();
    vertices.push(p);
    Ok(Triangulation::from_parts(t.dim(), vertices, facets))
}

/// Inverse of [`stellar_subdivide`]: removes an interior vertex whose star is
/// the subdivision of a single simplex. Vertex ids above `v` shift down by one.
pub fn undo_stellar(t: &Triangulation, v: usize) -> Result<Triangulation> {
    t.check_vertex(v)?;
    let not_simple = || ComplexError::NotSimpleInterior(v);
    let m = t.dim();
    let star = t.star(v);
    if star.len() != m + 1 || !t.is_interior_vertex(v)? {
        return Err(not_simple());
    }
    let link: BTreeSet<usize> = star.iter().flat_map(|f| f.iter().copied()).filter(|&u| u != v).collect();
    if link.len() != m + 1 {
        return Err(not_simple());
    }
    let link: Facet = link.into_iter().collect();
    if t.has_facet(&link) {
        return Err(not_simple());
    }
    if point_in_simplex(&t.points(&link), t.vertex(v))? != SimplexLocation::Interior {
        return Err(not_simple());
    }
    let shift = |u: usize| if u > v { u - 1 } else { u };
    let mut facets: Vec<Facet> =
        t.facets().iter().filter(|f| !f.contains(&v)).map(|f| f.iter().map(|&u| shift(u)).collect()).collect();
    facets.push(link.iter().map(|&u| shift(u)).collect());
    let mut vertices = t.vertices().to_vec();
    vertices.remove(v);
    Ok(Triangulation::from_parts(m, vertices, facets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, ratio};

    fn simplex(m: usize) -> Triangulation {
        let mut v = vec![Point::origin(m)];
        for i in 0..m {
            v.push(Point::axis(m, i, int(1)));
        }
        Triangulation::new(m, v, vec![(0..=m).collect()]).unwrap()
    }

    #[test]
    fn barycentric_subdivision_of_triangle() {
        let t = simplex(2);
        let b = Point::new(vec![ratio(1, 3), ratio(1, 3)]);
        let s = stellar_subdivide(&t, &[0, 1, 2], b).unwrap();
        assert_eq!(s.num_facets(), 3);
        assert_eq!(s.interior_ridges().count(), 3);
        assert_eq!(s.vertex_degree(3).unwrap(), 3);
        assert!(s.is_interior_vertex(3).unwrap());
        assert_eq!(s.vertex_degree(0).unwrap(), 2);
        assert!(!s.is_interior_vertex(0).unwrap());
        assert_eq!(undo_stellar(&s, 3).unwrap(), t);
        assert_eq!(undo_stellar(&s, 0), Err(ComplexError::NotSimpleInterior(0)));
        assert_eq!(s.vertex_degree(9), Err(ComplexError::UnknownVertex(9)));
    }

    #[test]
    fn tetrahedron_subdivision() {
        let t = simplex(3);
        let q = Point::new(vec![ratio(1, 5), ratio(1, 5), ratio(1, 5)]);
        let s = stellar_subdivide(&t, &[0, 1, 2, 3], q).unwrap();
        assert_eq!(s.num_facets(), 4);
        assert_eq!(s.vertex_degree(4).unwrap(), 4);
        assert!(Triangulation::new(3, s.vertices().to_vec(), s.facets().to_vec()).is_ok());
    }

    #[test]
    fn rejects_boundary_points_and_unknown_facets() {
        let t = simplex(2);
        let edge = Point::new(vec![ratio(1, 2), int(0)]);
        assert_eq!(stellar_subdivide(&t, &[0, 1, 2], edge), Err(ComplexError::NotInterior));
        let b = Point::new(vec![ratio(1, 3), ratio(1, 3)]);
        assert_eq!(stellar_subdivide(&t, &[0, 1], b), Err(ComplexError::UnknownFacet(vec![0, 1])));
    }

    #[test]
    fn chain_of_subdivisions_counts() {
        let t = simplex(2);
        let r = Point::new(vec![ratio(1, 3), ratio(1, 3)]);
        let t1 = stellar_subdivide(&t, &[0, 1, 2], r).unwrap();
        assert_eq!(t1.num_facets(), 3);
        let f = t1.facets()[0].clone();
        let pts = t1.points(&f);
        let refs: Vec<&Point> = pts.iter().collect();
        let t2 = stellar_subdivide(&t1, &f, Point::centroid(&refs).unwrap()).unwrap();
        assert_eq!(t2.num_facets(), 5);
        let f = t2.facets().iter().find(|f| f.contains(&4)).unwrap().clone();
        let pts = t2.points(&f);
        let refs: Vec<&Point> = pts.iter().collect();
        let t3 = stellar_subdivide(&t2, &f, Point::centroid(&refs).unwrap()).unwrap();
        assert_eq!(t3.num_facets(), 7);
        assert_eq!(undo_stellar(&t3, 5).unwrap(), t2);
    }
}
