use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::angle::{check_configuration, TriangleConfig};
use super::{split::SplitGeometry, ObstructionError, Result};
use crate::complex::{Facet, Triangulation};
use crate::kernel::linalg::{rank, solve_affine, solve_unique};
use crate::kernel::{circumsphere, invert_in_sphere, sphere_side, Point, Scalar, Sphere, SphereSide};

/// Diagnostic sphere through the ridge shared by the first two subdivided
/// facets, and its section by the plane of the projection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RidgeDiagnostic {
    pub sphere: Sphere,
    /// `None` when the plane misses the sphere.
    pub section: Option<Sphere>,
    /// Sides of the three projected subdivision points relative to `section`.
    pub projected_sides: Vec<SphereSide>,
}

/// Output of inverting a triply subdivided complex at the split point `x`
/// and projecting to the plane of `c'`, `v'_1`, `v'_2`, `v'_3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    /// Images of the facets whose circumsphere avoids `x`.
    pub t_prime: Triangulation,
    /// `c'`, `v'_1`, `v'_2`, `v'_3`.
    pub plane: Vec<Point>,
    pub coplanar: bool,
    /// Projected configuration: corners `v'_1..v'_3`, split point `c'`, and
    /// the projections of `r'_1..r'_3`.
    pub projected: TriangleConfig,
    /// Barycentric coordinates in the plane relative to `v'_1, v'_2, v'_3`:
    /// `c'` first, then the three projected points.
    pub plane_coordinates: Vec<Vec<String>>,
    pub projected_type_ok: bool,
    pub ridge: Option<RidgeDiagnostic>,
}

fn barycentric(simplex: &[Point], p: &Point) -> Option<Vec<Scalar>> {
    let m = p.dim();
    let mut rows: Vec<Vec<Scalar>> = (0..m).map(|r| simplex.iter().map(|v| v[r].clone()).collect()).collect();
    rows.push(vec![Scalar::one(); simplex.len()]);
    let mut rhs = p.coords().to_vec();
    rhs.push(Scalar::one());
    solve_affine(&rows, &rhs, simplex.len()).filter(|s| s.kernel.is_empty()).map(|s| s.particular)
}

/// Orthogonal projection of `p` onto the plane through `o` spanned by `u`, `v`.
fn project_to_plane(o: &Point, u: &Point, v: &Point, p: &Point) -> Result<Point> {
    let w = p.sub(o)?;
    let g = vec![vec![u.dot(u)?, u.dot(v)?], vec![u.dot(v)?, v.dot(v)?]];
    let rhs = [w.dot(u)?, w.dot(v)?];
    let s = solve_unique(&g, &rhs).ok_or_else(|| ObstructionError::InvariantFailed("degenerate plane".into()))?;
    Ok(o.add_scaled(&s[0], u)?.add_scaled(&s[1], v)?)
}

/// `t` is the split simplex of `g` (with `k = 3`) after single subdivisions
/// of its first three facets; vertex ids of the split simplex are kept and
/// the three new vertices follow.
pub fn reduce_by_inversion(t: &Triangulation, g: &SplitGeometry) -> Result<Reduction> {
    let roles = &g.roles;
    let d = roles.d();
    if d <= 3 || g.k != 3 {
        return Err(ObstructionError::BadInput("reduction needs d > 3 and k = 3".into()));
    }
    if t.num_vertices() != d + 4 {
        return Err(ObstructionError::BadInput("expected three subdivision points".into()));
    }
    // r_i is the new vertex whose star covers facet i of the split simplex
    let mut r = [usize::MAX; 3];
    for v in d + 1..d + 4 {
        let mut parent: Facet = t.star(v).into_iter().flatten().copied().collect();
        parent.sort_unstable();
        parent.dedup();
        parent.retain(|&u| u != v);
        match roles.facet_index(&parent) {
            Some(i) if i < 3 && r[i] == usize::MAX => r[i] = v,
            _ => {
                return Err(ObstructionError::BadInput(format!("vertex {v} does not subdivide a distinct first facet")))
            }
        }
    }
    let one = Scalar::one();
    let mut inverted = Vec::with_capacity(t.num_vertices());
    for (i, p) in t.vertices().iter().enumerate() {
        if *p == g.x {
            return Err(ObstructionError::InversionCenterHit(i));
        }
        inverted.push(invert_in_sphere(&g.x, &one, p)?);
    }
    let mut kept = Vec::new();
    for f in t.facets() {
        if sphere_side(&circumsphere(&t.points(f))?, &g.x)? != SphereSide::On {
            kept.push(f.clone());
        }
    }
    let t_prime = Triangulation::from_parts(t.dim(), inverted.clone(), kept);

    let img = |v: usize| inverted[v].clone();
    let c = img(roles.center);
    let v: Vec<Point> = roles.vertices.iter().map(|&u| img(u)).collect();
    let plane = vec![c.clone(), v[0].clone(), v[1].clone(), v[2].clone()];
    let diffs: Vec<Vec<Scalar>> =
        plane[1..].iter().map(|p| p.sub(&c).map(Point::into_coords)).collect::<std::result::Result<_, _>>()?;
    let coplanar = rank(&diffs, c.dim()) == 2;

    let mut projected = Vec::with_capacity(3);
    for &ri in &r {
        let beta = barycentric(&v, &img(ri))
            .ok_or_else(|| ObstructionError::InvariantFailed("inverted simplex is degenerate".into()))?;
        let s: Scalar = beta[..3].iter().sum();
        if !s.is_positive() {
            return Err(ObstructionError::InvariantFailed("projection leaves the plane triangle".into()));
        }
        let w: Vec<Scalar> = beta[..3].iter().map(|b| b / &s).collect();
        projected.push(Point::combination(&[&v[0], &v[1], &v[2]], &w)?);
    }
    let projected = TriangleConfig {
        corners: [v[0].clone(), v[1].clone(), v[2].clone()],
        x: c.clone(),
        inner: [projected[0].clone(), projected[1].clone(), projected[2].clone()],
    };
    let projected_type_ok = coplanar && check_configuration(&projected).is_ok();
    let plane_coordinates = std::iter::once(&c)
        .chain(projected.inner.iter())
        .map(|p| {
            barycentric(&v[..3], p).map_or_else(Vec::new, |b| b.iter().map(crate::kernel::format_scalar).collect())
        })
        .collect();
    let ridge = if coplanar { ridge_diagnostic(&inverted, roles, &r, &projected)? } else { None };
    Ok(Reduction { t_prime, plane, coplanar, projected, plane_coordinates, projected_type_ok, ridge })
}

/// Sphere through `c', v'_3, ..., v'_d` and whichever of `r'_1`, `r'_2` is
/// nearer to `c'`, cut with the plane of the projection.
fn ridge_diagnostic(
    inverted: &[Point],
    roles: &super::split::SplitSimplex,
    r: &[usize; 3],
    projected: &TriangleConfig,
) -> Result<Option<RidgeDiagnostic>> {
    let c = &inverted[roles.center];
    let (r1, r2) = (&inverted[r[0]], &inverted[r[1]]);
    let nearer = if c.dist_sq(r1)? <= c.dist_sq(r2)? { r1 } else { r2 };
    let mut pts = vec![c.clone()];
    pts.extend(roles.vertices[2..].iter().map(|&u| inverted[u].clone()));
    pts.push(nearer.clone());
    let Ok(sphere) = circumsphere(&pts) else {
        return Ok(None);
    };
    let [a, _, cc] = &projected.corners;
    let u = a.sub(c)?;
    let w = cc.sub(c)?;
    let foot = project_to_plane(c, &u, &w, &sphere.center)?;
    let rad = &sphere.radius_sq - foot.dist_sq(&sphere.center)?;
    let section = (!rad.is_negative() && !rad.is_zero()).then(|| Sphere::new(foot, rad));
    let projected_sides = match &section {
        Some(s) => projected.inner.iter().map(|p| sphere_side(s, p)).collect::<std::result::Result<_, _>>()?,
        None => Vec::new(),
    };
    Ok(Some(RidgeDiagnostic { sphere, section, projected_sides }))
}
