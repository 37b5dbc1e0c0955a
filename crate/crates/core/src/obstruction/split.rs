use serde::{Deserialize, Serialize};

use super::{ObstructionError, Result};
use crate::complex::{check_delaunay, DelaunayMode, Facet, Triangulation};
use crate::kernel::linalg::solve_affine;
use crate::kernel::{
    affine_intersection_line, circumsphere, face_circumsphere, line_sphere_second_root, serde_scalar, sphere_side,
    Line, Point, Scalar, Sphere, SphereSide,
};

/// Vertex roles in a simplex subdivided once at an interior point `center`.
/// Facet `i` is the one missing `vertices[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSimplex {
    pub center: usize,
    pub vertices: Vec<usize>,
}

impl SplitSimplex {
    pub fn d(&self) -> usize {
        self.vertices.len()
    }

    pub fn facet(&self, i: usize) -> Facet {
        let mut f: Facet = self.vertices.iter().copied().filter(|&v| v != self.vertices[i]).collect();
        f.push(self.center);
        f.sort_unstable();
        f
    }

    /// Which facet `f` is, if any.
    pub fn facet_index(&self, f: &[usize]) -> Option<usize> {
        (0..self.d()).find(|&i| self.facet(i) == f)
    }
}

/// Recognizes a single stellar subdivision of a simplex: `d + 1` vertices,
/// `d` facets, one vertex common to all of them.
pub fn classify_split(delta: &Triangulation) -> Result<SplitSimplex> {
    let d = delta.dim() + 1;
    let bad = |what: &str| ObstructionError::BadInput(format!("not a single subdivision of a simplex: {what}"));
    if delta.num_vertices() != d + 1 || delta.num_facets() != d {
        return Err(bad("wrong counts"));
    }
    let center =
        (0..=d).find(|v| delta.facets().iter().all(|f| f.contains(v))).ok_or_else(|| bad("no common vertex"))?;
    if !delta.is_interior_vertex(center)? {
        return Err(bad("common vertex is on the boundary"));
    }
    let vertices = (0..=d).filter(|&v| v != center).collect();
    Ok(SplitSimplex { center, vertices })
}

/// The line through the center along which the two halves of a split of the
/// simplex vertices meet, with the second intersection points of that line
/// with the two half circumspheres.
///
/// Parameters are measured along `ell` with the center at 0; the direction is
/// chosen so that `x`'s side is negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitGeometry {
    pub k: usize,
    pub roles: SplitSimplex,
    /// Center followed by the first `k` simplex vertices.
    pub e_f: Vec<Point>,
    /// Center followed by the remaining simplex vertices.
    pub e_g: Vec<Point>,
    pub ell: Line,
    pub c_f: Sphere,
    pub c_g: Sphere,
    pub x: Point,
    pub x_bar: Point,
    pub y_bar: Point,
    pub y: Point,
    #[serde(with = "serde_scalar")]
    pub t_x: Scalar,
    #[serde(with = "serde_scalar")]
    pub t_x_bar: Scalar,
    #[serde(with = "serde_scalar")]
    pub t_y_bar: Scalar,
    #[serde(with = "serde_scalar")]
    pub t_y: Scalar,
}

impl SplitGeometry {
    /// `x <= x_bar < c < y_bar <= y` along `ell`, with equality exactly for
    /// `k = 1` on the left and `d - k = 1` on the right.
    pub fn ordering_holds(&self) -> bool {
        let zero = Scalar::from_integer(0.into());
        let d = self.roles.d();
        let left = if self.k == 1 { self.t_x == self.t_x_bar } else { self.t_x < self.t_x_bar };
        let right = if d - self.k == 1 { self.t_y == self.t_y_bar } else { self.t_y_bar < self.t_y };
        left && right && self.t_x_bar < zero && zero < self.t_y_bar
    }
}

/// Parameter at which `line` meets the affine hull of `pts`.
fn meet_affine_hull(line: &Line, pts: &[Point]) -> Result<Scalar> {
    let (last, rest) = pts.split_last().expect("nonempty span");
    let m = line.base.dim();
    let diffs: Vec<Point> = rest.iter().map(|p| p.sub(last)).collect::<std::result::Result<_, _>>()?;
    // base + λ dir - Σ μ_i (p_i - last) = last
    let rows: Vec<Vec<Scalar>> = (0..m)
        .map(|r| std::iter::once(line.direction[r].clone()).chain(diffs.iter().map(|v| -v[r].clone())).collect())
        .collect();
    let rhs: Vec<Scalar> = last.sub(&line.base)?.into_coords();
    let sol = solve_affine(&rows, &rhs, 1 + diffs.len())
        .filter(|s| s.kernel.is_empty())
        .ok_or_else(|| ObstructionError::InvariantFailed("line does not meet the face hull in one point".into()))?;
    Ok(sol.particular[0].clone())
}

pub fn split_geometry(delta: &Triangulation, k: usize) -> Result<SplitGeometry> {
    let roles = classify_split(delta)?;
    let d = roles.d();
    if k == 0 || k >= d {
        return Err(ObstructionError::BadInput(format!("k = {k} outside 1..{d}")));
    }
    let c = delta.vertex(roles.center).clone();
    let v: Vec<Point> = roles.vertices.iter().map(|&i| delta.vertex(i).clone()).collect();
    let e_f: Vec<Point> = std::iter::once(c.clone()).chain(v[..k].iter().cloned()).collect();
    let e_g: Vec<Point> = std::iter::once(c.clone()).chain(v[k..].iter().cloned()).collect();
    let mut ell = affine_intersection_line(&e_f, &e_g)?;
    let mut t_x_bar = meet_affine_hull(&ell, &v[..k])?;
    if t_x_bar > Scalar::from_integer(0.into()) {
        ell = Line::new(c.clone(), ell.direction.scale(&Scalar::from_integer((-1).into())))?;
        t_x_bar = -t_x_bar;
    }
    let t_y_bar = meet_affine_hull(&ell, &v[k..])?;
    let c_f = face_circumsphere(&e_f)?;
    let c_g = face_circumsphere(&e_g)?;
    let zero = Scalar::from_integer(0.into());
    let t_x = line_sphere_second_root(&ell, &c_f, &zero)?;
    let t_y = line_sphere_second_root(&ell, &c_g, &zero)?;
    let g = SplitGeometry {
        k,
        x: ell.at(&t_x),
        x_bar: ell.at(&t_x_bar),
        y_bar: ell.at(&t_y_bar),
        y: ell.at(&t_y),
        roles,
        e_f,
        e_g,
        ell,
        c_f,
        c_g,
        t_x,
        t_x_bar,
        t_y_bar,
        t_y,
    };
    let on = |s: &Sphere, p: &Point| sphere_side(s, p).map(|x| x == SphereSide::On);
    if !(on(&g.c_f, &c)? && on(&g.c_f, &g.x)? && on(&g.c_g, &c)? && on(&g.c_g, &g.y)?) {
        return Err(ObstructionError::InvariantFailed("split points are not on their spheres".into()));
    }
    if !g.ordering_holds() {
        return Err(ObstructionError::InvariantFailed("points out of order along the split line".into()));
    }
    Ok(g)
}

/// Position of `x` relative to the circumspheres of the subdivision's facets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPointReport {
    /// Side of `x` for facet `i` (the facet missing simplex vertex `i`).
    pub sides: Vec<SphereSide>,
    pub ordering: bool,
    pub ok: bool,
}

/// `x` must be outside the circumspheres of the first `k` facets and on the
/// circumspheres of the others.
pub fn verify_split_point(g: &SplitGeometry, delta: &Triangulation) -> Result<SplitPointReport> {
    let sides = (0..g.roles.d())
        .map(|i| Ok(sphere_side(&circumsphere(&delta.points(&g.roles.facet(i)))?, &g.x)?))
        .collect::<Result<Vec<_>>>()?;
    let ordering = g.ordering_holds();
    let ok = ordering
        && sides.iter().enumerate().all(|(i, &s)| s == if i < g.k { SphereSide::Outside } else { SphereSide::On });
    Ok(SplitPointReport { sides, ordering, ok })
}

/// How a facet created inside one of the first `k` facets relates to it: by
/// the vertex of the subdivided facet it leaves out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NewFacetCase {
    /// Misses the center.
    MissesCenter,
    /// Misses one of the first `k` simplex vertices.
    MissesFirstGroup,
    /// Misses one of the last `d - k` simplex vertices.
    MissesSecondGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewFacetCheck {
    pub facet: Facet,
    /// Index of the subdivided facet of the single subdivision.
    pub subdivided: usize,
    pub case: NewFacetCase,
    pub side: SphereSide,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewFacetReport {
    pub checks: Vec<NewFacetCheck>,
    pub ok: bool,
}

/// For `subdivided`, obtained from `delta` by single subdivisions of some of
/// the first `k` facets and Delaunay, checks that `x` is outside the
/// circumsphere of every new facet.
pub fn verify_new_facets(
    delta: &Triangulation,
    subdivided: &Triangulation,
    g: &SplitGeometry,
) -> Result<NewFacetReport> {
    let n = delta.num_vertices();
    if subdivided.num_vertices() <= n || subdivided.vertices()[..n] != delta.vertices()[..] {
        return Err(ObstructionError::BadInput("second complex does not extend the first".into()));
    }
    let report = check_delaunay(subdivided, DelaunayMode::FacetsEmpty)?;
    if let Some(v) = report.violations.first() {
        return Err(ObstructionError::HypothesisFailed(v.face.clone()));
    }
    let roles = &g.roles;
    let mut checks = Vec::new();
    for r in n..subdivided.num_vertices() {
        let star = subdivided.star(r);
        let mut parent: Vec<usize> = star.iter().flat_map(|f| f.iter().copied()).collect();
        parent.sort_unstable();
        parent.dedup();
        parent.retain(|&u| u != r);
        let i = roles.facet_index(&parent).filter(|&i| i < g.k).ok_or_else(|| {
            ObstructionError::BadInput(format!("vertex {r} does not subdivide one of the first k facets"))
        })?;
        for f in star {
            let facet = f.clone();
            let missing = *parent.iter().find(|u| !facet.contains(u)).expect("new facet misses one vertex");
            let case = if missing == roles.center {
                NewFacetCase::MissesCenter
            } else if roles.vertices[..g.k].contains(&missing) {
                NewFacetCase::MissesFirstGroup
            } else {
                NewFacetCase::MissesSecondGroup
            };
            let side = sphere_side(&circumsphere(&subdivided.points(&facet))?, &g.x)?;
            checks.push(NewFacetCheck { facet, subdivided: i, case, side });
        }
    }
    let ok = checks.iter().all(|c| c.side == SphereSide::Outside);
    Ok(NewFacetReport { checks, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::stellar_subdivide;
    use crate::kernel::{int, ratio};

    fn delta(pts: Vec<Point>, c: Point) -> Triangulation {
        let m = pts.len() - 1;
        let s = Triangulation::new(m, pts, vec![(0..=m).collect()]).unwrap();
        stellar_subdivide(&s, &(0..=m).collect::<Vec<_>>(), c).unwrap()
    }

    fn triangle() -> Triangulation {
        delta(
            vec![Point::from_ints(&[0, 0]), Point::from_ints(&[4, 0]), Point::from_ints(&[1, 4])],
            Point::new(vec![ratio(3, 2), int(1)]),
        )
    }

    #[test]
    fn planar_split_with_two_first_vertices() {
        let t = triangle();
        let g = split_geometry(&t, 2).unwrap();
        // the line joins c with the third vertex, which is y and y_bar at once
        assert_eq!(g.y, Point::from_ints(&[1, 4]));
        assert_eq!(g.y_bar, g.y);
        assert!(g.ell.parameter_of(&g.y).unwrap().is_some());
        let r = verify_split_point(&g, &t).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.sides, vec![SphereSide::Outside, SphereSide::Outside, SphereSide::On]);
    }

    #[test]
    fn first_group_of_one_coincides() {
        let t = triangle();
        let g = split_geometry(&t, 1).unwrap();
        assert_eq!(g.x, g.x_bar);
        assert_eq!(g.x, Point::from_ints(&[0, 0]));
        assert!(verify_split_point(&g, &t).unwrap().ok);
    }

    #[test]
    fn symmetric_split_point_is_diametral() {
        // isosceles triangle symmetric about x = 2; c on the axis
        let t = delta(
            vec![Point::from_ints(&[0, 0]), Point::from_ints(&[4, 0]), Point::from_ints(&[2, 5])],
            Point::from_ints(&[2, 2]),
        );
        let g = split_geometry(&t, 2).unwrap();
        // ell is the symmetry axis, so c and x are antipodal on C_F
        assert_eq!(g.c_f.center, Point::combination(&[&g.x, t.vertex(3)], &[ratio(1, 2), ratio(1, 2)]).unwrap());
        assert_eq!(g.x, Point::new(vec![int(2), ratio(-2, 1)]));
        assert!(verify_split_point(&g, &t).unwrap().ok);
    }

    #[test]
    fn rejects_other_complexes() {
        let s = Triangulation::new(
            2,
            vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 0]), Point::from_ints(&[0, 1])],
            vec![vec![0, 1, 2]],
        )
        .unwrap();
        assert!(matches!(split_geometry(&s, 1), Err(ObstructionError::BadInput(_))));
        assert!(matches!(split_geometry(&triangle(), 3), Err(ObstructionError::BadInput(_))));
    }

    #[test]
    fn non_delaunay_subdivision_fails_the_hypothesis() {
        let t = triangle();
        let g = split_geometry(&t, 2).unwrap();
        // facet 0 = {1, 2, c}; a point hugging the edge c-v2 makes a sliver
        // whose circle swallows vertex 0
        let near = Point::new(vec![ratio(270, 100), ratio(53, 100)]);
        let f0 = g.roles.facet(0);
        let sub = stellar_subdivide(&t, &f0, near).unwrap();
        assert!(matches!(verify_new_facets(&t, &sub, &g), Err(ObstructionError::HypothesisFailed(_))));
    }
}
