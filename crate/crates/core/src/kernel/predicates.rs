use std::cmp::Ordering;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::linalg::{determinant, nullspace, solve_unique, Matrix};
use super::{check_dim, KernelError, Point, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: &Scalar) -> Sign {
        match x.cmp(&Scalar::zero()) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SphereSide {
    Inside,
    On,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Negative,
    On,
    Positive,
}

/// Sphere stored by center and squared radius.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sphere {
    pub center: Point,
    #[serde(with = "super::scalar::serde_scalar")]
    pub radius_sq: Scalar,
}

impl Sphere {
    pub fn new(center: Point, radius_sq: Scalar) -> Self {
        Sphere { center, radius_sq }
    }

    pub fn unit(dim: usize) -> Self {
        Sphere::new(Point::origin(dim), super::scalar::int(1))
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }
}

/// The locus `<normal, x> = offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Point,
    pub offset: Scalar,
}

impl Hyperplane {
    pub fn new(normal: Point, offset: Scalar) -> Result<Self> {
        if normal.is_zero() {
            return Err(KernelError::ZeroVector);
        }
        Ok(Hyperplane { normal, offset })
    }

    /// Hyperplane through `m` affinely independent points of `R^m`.
    pub fn through(points: &[Point]) -> Result<Self> {
        let m = points.first().map_or(0, Point::dim);
        if points.len() != m {
            return Err(KernelError::WrongPointCount { expected: m, got: points.len() });
        }
        let rows = edge_rows(points)?;
        let kernel = nullspace(&rows, m);
        if kernel.len() != 1 {
            return Err(KernelError::DegenerateSimplex);
        }
        let normal = Point::new(kernel.into_iter().next().unwrap());
        let offset = normal.dot(&points[0])?;
        Ok(Hyperplane { normal, offset })
    }
}

fn edge_rows(points: &[Point]) -> Result<Matrix> {
    let p0 = &points[0];
    points[1..].iter().map(|p| Ok(p.sub(p0)?.into_coords())).collect()
}

fn check_simplex(simplex: &[Point]) -> Result<usize> {
    let m = simplex.first().map_or(0, Point::dim);
    if simplex.len() != m + 1 {
        return Err(KernelError::WrongPointCount { expected: m + 1, got: simplex.len() });
    }
    for p in simplex {
        check_dim(m, p.dim())?;
    }
    Ok(m)
}

/// Sign of `det[p_1 - p_0, ..., p_m - p_0]` for `m + 1` points of `R^m`.
pub fn orientation(simplex: &[Point]) -> Result<Sign> {
    check_simplex(simplex)?;
    Ok(Sign::of(&determinant(edge_rows(simplex)?)))
}

/// Circumsphere of a full-dimensional simplex.
pub fn circumsphere(simplex: &[Point]) -> Result<Sphere> {
    check_simplex(simplex)?;
    // 2 <p_i - p_0, center> = |p_i|^2 - |p_0|^2
    let p0 = &simplex[0];
    let n0 = p0.norm_sq();
    let two = super::scalar::int(2);
    let mut rows: Matrix = Vec::with_capacity(simplex.len() - 1);
    let mut rhs = Vec::with_capacity(simplex.len() - 1);
    for p in &simplex[1..] {
        rows.push(p.sub(p0)?.coords().iter().map(|x| x * &two).collect());
        rhs.push(p.norm_sq() - &n0);
    }
    let center = Point::new(solve_unique(&rows, &rhs).ok_or(KernelError::DegenerateSimplex)?);
    let radius_sq = center.dist_sq(p0)?;
    Ok(Sphere { center, radius_sq })
}

/// Circumsphere of a `k`-simplex in `R^m` (`k <= m`), centered in its affine
/// hull. Viewed as a sphere of `R^m` it meets the affine hull exactly in the
/// circumscribed `(k-1)`-sphere.
pub fn face_circumsphere(points: &[Point]) -> Result<Sphere> {
    let m = points.first().map_or(0, Point::dim);
    for p in points {
        check_dim(m, p.dim())?;
    }
    if points.is_empty() || points.len() > m + 1 {
        return Err(KernelError::WrongPointCount { expected: m + 1, got: points.len() });
    }
    let p0 = &points[0];
    let edges: Vec<Point> = points[1..].iter().map(|p| p.sub(p0)).collect::<Result<_>>()?;
    // center = p0 + sum(a_j e_j) with 2 <center - p0, e_i> = |e_i|^2
    let gram: Matrix =
        edges.iter().map(|ei| edges.iter().map(|ej| ei.dot(ej)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let half = super::scalar::ratio(1, 2);
    let rhs: Vec<Scalar> = edges.iter().map(|e| e.norm_sq() * &half).collect();
    let alpha = solve_unique(&gram, &rhs).ok_or(KernelError::DegenerateSimplex)?;
    let mut center = p0.clone();
    for (a, e) in alpha.iter().zip(&edges) {
        center = center.add_scaled(a, e)?;
    }
    let radius_sq = center.dist_sq(p0)?;
    Ok(Sphere { center, radius_sq })
}

pub fn sphere_side(s: &Sphere, p: &Point) -> Result<SphereSide> {
    let d = p.dist_sq(&s.center)?;
    Ok(match d.cmp(&s.radius_sq) {
        Ordering::Less => SphereSide::Inside,
        Ordering::Equal => SphereSide::On,
        Ordering::Greater => SphereSide::Outside,
    })
}

pub fn hyperplane_side(h: &Hyperplane, p: &Point) -> Result<Side> {
    let v = h.normal.dot(p)? - &h.offset;
    Ok(match Sign::of(&v) {
        Sign::Negative => Side::Negative,
        Sign::Zero => Side::On,
        Sign::Positive => Side::Positive,
    })
}

/// In-sphere test through the lifted determinant
/// `det[p_i - q, |p_i - q|^2]`, normalized by the simplex orientation.
/// Independent of [`circumsphere`]; used to cross-check it.
pub fn insphere_lifted(simplex: &[Point], q: &Point) -> Result<SphereSide> {
    let m = check_simplex(simplex)?;
    check_dim(m, q.dim())?;
    let orient = orientation(simplex)?;
    if orient == Sign::Zero {
        return Err(KernelError::DegenerateSimplex);
    }
    let rows: Matrix = simplex
        .iter()
        .map(|p| {
            let v = p.sub(q)?;
            let mut row = v.coords().to_vec();
            row.push(v.norm_sq());
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let mut s = Sign::of(&determinant(rows));
    if orient == Sign::Negative {
        s = s.flip();
    }
    if m % 2 == 1 {
        s = s.flip();
    }
    Ok(match s {
        Sign::Positive => SphereSide::Inside,
        Sign::Zero => SphereSide::On,
        Sign::Negative => SphereSide::Outside,
    })
}

/// Location of a point relative to a closed full-dimensional simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexLocation {
    Interior,
    Boundary,
    Exterior,
}

/// Exact point location by orientation signs. Errors on a degenerate simplex.
pub fn point_in_simplex(simplex: &[Point], p: &Point) -> Result<SimplexLocation> {
    let m = check_simplex(simplex)?;
    check_dim(m, p.dim())?;
    let base = orientation(simplex)?;
    if base == Sign::Zero {
        return Err(KernelError::DegenerateSimplex);
    }
    let mut on_boundary = false;
    let mut tmp = simplex.to_vec();
    for i in 0..simplex.len() {
        tmp[i] = p.clone();
        let s = orientation(&tmp)?;
        tmp[i] = simplex[i].clone();
        if s == Sign::Zero {
            on_boundary = true;
        } else if s != base {
            return Ok(SimplexLocation::Exterior);
        }
    }
    Ok(if on_boundary { SimplexLocation::Boundary } else { SimplexLocation::Interior })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::{int, ratio};

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&[p(&[0, 0]), p(&[1, 0]), p(&[0, 1])]).unwrap(), Sign::Positive);
        assert_eq!(orientation(&[p(&[0, 0]), p(&[1, 0]), p(&[2, 0])]).unwrap(), Sign::Zero);
        assert_eq!(orientation(&[p(&[0, 0]), p(&[0, 1]), p(&[1, 0])]).unwrap(), Sign::Negative);
        assert!(matches!(
            orientation(&[p(&[0, 0]), p(&[0, 1, 2]), p(&[1, 0])]),
            Err(KernelError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn circumsphere_examples() {
        let s = circumsphere(&[p(&[0, 0]), p(&[2, 0]), p(&[0, 2])]).unwrap();
        assert_eq!(s.center, p(&[1, 1]));
        assert_eq!(s.radius_sq, int(2));
        let s = circumsphere(&[p(&[-1, 0]), p(&[1, 0]), p(&[0, 1])]).unwrap();
        assert_eq!(s.center, p(&[0, 0]));
        assert_eq!(s.radius_sq, int(1));
        let s = circumsphere(&[p(&[0, 0, 0]), p(&[2, 0, 0]), p(&[0, 2, 0]), p(&[0, 0, 2])]).unwrap();
        assert_eq!(s.center, p(&[1, 1, 1]));
        assert_eq!(s.radius_sq, int(3));
        assert_eq!(circumsphere(&[p(&[0, 0]), p(&[1, 1]), p(&[2, 2])]), Err(KernelError::DegenerateSimplex));
    }

    #[test]
    fn face_circumsphere_of_segment_is_midpoint_ball() {
        let s = face_circumsphere(&[p(&[0, 0, 0]), p(&[2, 2, 0])]).unwrap();
        assert_eq!(s.center, p(&[1, 1, 0]));
        assert_eq!(s.radius_sq, int(2));
    }

    #[test]
    fn sphere_side_examples() {
        let u = Sphere::unit(2);
        assert_eq!(sphere_side(&u, &p(&[2, 0])).unwrap(), SphereSide::Outside);
        assert_eq!(sphere_side(&u, &p(&[1, 0])).unwrap(), SphereSide::On);
        let half = Point::new(vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(sphere_side(&u, &half).unwrap(), SphereSide::Inside);
    }

    #[test]
    fn hyperplane_side_examples() {
        let h = Hyperplane::new(p(&[1, 0]), int(0)).unwrap();
        assert_eq!(hyperplane_side(&h, &p(&[1, 0])).unwrap(), Side::Positive);
        assert_eq!(hyperplane_side(&h, &p(&[0, 5])).unwrap(), Side::On);
        let q = Point::new(vec![ratio(-1, 3), int(2)]);
        assert_eq!(hyperplane_side(&h, &q).unwrap(), Side::Negative);
        assert_eq!(Hyperplane::new(p(&[0, 0]), int(1)), Err(KernelError::ZeroVector));
    }

    #[test]
    fn lifted_insphere_matches_center_form_in_low_dims() {
        let tri = [p(&[0, 0]), p(&[4, 0]), p(&[0, 4])];
        for (q, want) in
            [(p(&[1, 1]), SphereSide::Inside), (p(&[4, 4]), SphereSide::On), (p(&[5, 5]), SphereSide::Outside)]
        {
            assert_eq!(insphere_lifted(&tri, &q).unwrap(), want);
            let rev = [tri[0].clone(), tri[2].clone(), tri[1].clone()];
            assert_eq!(insphere_lifted(&rev, &q).unwrap(), want);
        }
        let tet = [p(&[0, 0, 0]), p(&[2, 0, 0]), p(&[0, 2, 0]), p(&[0, 0, 2])];
        assert_eq!(insphere_lifted(&tet, &p(&[1, 1, 1])).unwrap(), SphereSide::Inside);
        assert_eq!(insphere_lifted(&tet, &p(&[2, 2, 2])).unwrap(), SphereSide::On);
        assert_eq!(insphere_lifted(&tet, &p(&[3, 3, 3])).unwrap(), SphereSide::Outside);
    }

    #[test]
    fn point_location() {
        let tri = [p(&[0, 0]), p(&[3, 0]), p(&[0, 3])];
        assert_eq!(point_in_simplex(&tri, &p(&[1, 1])).unwrap(), SimplexLocation::Interior);
        assert_eq!(point_in_simplex(&tri, &p(&[1, 0])).unwrap(), SimplexLocation::Boundary);
        assert_eq!(point_in_simplex(&tri, &p(&[3, 3])).unwrap(), SimplexLocation::Exterior);
    }
}
