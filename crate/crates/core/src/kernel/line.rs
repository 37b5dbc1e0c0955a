use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::linalg::{nullspace, Matrix};
use super::{check_dim, KernelError, Point, Result, Scalar, Sphere};

/// The points `base + λ·direction`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Line {
    pub base: Point,
    pub direction: Point,
}

impl Line {
    pub fn new(base: Point, direction: Point) -> Result<Self> {
        check_dim(base.dim(), direction.dim())?;
        if direction.is_zero() {
            return Err(KernelError::ZeroVector);
        }
        Ok(Line { base, direction })
    }

    pub fn at(&self, lambda: &Scalar) -> Point {
        self.base.add_scaled(lambda, &self.direction).expect("line dimensions checked at construction")
    }

    /// Parameter of `p` if it lies on the line.
    pub fn parameter_of(&self, p: &Point) -> Result<Option<Scalar>> {
        let diff = p.sub(&self.base)?;
        let lambda = diff.dot(&self.direction)? / self.direction.norm_sq();
        Ok((self.at(&lambda) == *p).then_some(lambda))
    }
}

/// Second intersection parameter of `l` with `s`, given that `l(known)` is on
/// `s`. Equals `known` exactly when the line is tangent.
pub fn line_sphere_second_root(l: &Line, s: &Sphere, known: &Scalar) -> Result<Scalar> {
    check_dim(s.dim(), l.base.dim())?;
    if l.at(known).dist_sq(&s.center)? != s.radius_sq {
        return Err(KernelError::NotOnSphere);
    }
    // |b - c + λ d|^2 = r^2, roots sum to -2<b - c, d> / |d|^2
    let bc = l.base.sub(&s.center)?;
    let two = Scalar::from_integer(2.into());
    let sum = -(two * bc.dot(&l.direction)?) / l.direction.norm_sq();
    Ok(sum - known)
}

/// Line through the common first point `c` of both spans, with direction in
/// both direction spaces. When the intersection has dimension above one, the
/// first kernel vector in elimination order is used.
pub fn affine_intersection_line(span_a: &[Point], span_b: &[Point]) -> Result<Line> {
    let (c, rest_a) = span_a.split_first().ok_or(KernelError::EmptyIntersection)?;
    let (cb, rest_b) = span_b.split_first().ok_or(KernelError::EmptyIntersection)?;
    if c != cb {
        return Err(KernelError::NoCommonPoint);
    }
    let m = c.dim();
    let da: Vec<Point> = rest_a.iter().map(|p| p.sub(c)).collect::<Result<_>>()?;
    let db: Vec<Point> = rest_b.iter().map(|p| p.sub(c)).collect::<Result<_>>()?;
    // sum α_i a_i - sum β_j b_j = 0
    let ncols = da.len() + db.len();
    let rows: Matrix =
        (0..m).map(|r| da.iter().map(|v| v[r].clone()).chain(db.iter().map(|v| -v[r].clone())).collect()).collect();
    for k in nullspace(&rows, ncols) {
        let mut dir = Point::origin(m);
        for (alpha, v) in k.iter().zip(&da) {
            if !alpha.is_zero() {
                dir = dir.add_scaled(alpha, v)?;
            }
        }
        if !dir.is_zero() {
            return Line::new(c.clone(), dir);
        }
    }
    Err(KernelError::EmptyIntersection)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::circumsphere;
    use crate::kernel::scalar::int;

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    #[test]
    fn second_root_examples() {
        let unit = Sphere::unit(2);
        let l = Line::new(p(&[-1, 0]), p(&[1, 0])).unwrap();
        assert_eq!(line_sphere_second_root(&l, &unit, &int(0)).unwrap(), int(2));
        let l = Line::new(p(&[0, 1]), p(&[1, 0])).unwrap();
        assert_eq!(line_sphere_second_root(&l, &unit, &int(0)).unwrap(), int(0));
        let s = circumsphere(&[p(&[0, 0]), p(&[2, 0]), p(&[0, 2])]).unwrap();
        let l = Line::new(p(&[0, 0]), p(&[1, 1])).unwrap();
        let lam = line_sphere_second_root(&l, &s, &int(0)).unwrap();
        assert_eq!(lam, int(2));
        assert_eq!(l.at(&lam), p(&[2, 2]));
        let l = Line::new(p(&[0, 0]), p(&[1, 1])).unwrap();
        assert_eq!(line_sphere_second_root(&l, &unit, &int(0)), Err(KernelError::NotOnSphere));
    }

    #[test]
    fn intersection_examples() {
        let o = p(&[0, 0, 0]);
        let xz = [o.clone(), p(&[1, 0, 0]), p(&[0, 0, 1])];
        let yz = [o.clone(), p(&[0, 1, 0]), p(&[0, 0, 1])];
        let l = affine_intersection_line(&xz, &yz).unwrap();
        assert_eq!(l.base, o);
        assert_eq!(l.direction, p(&[0, 0, 1]));

        let line = [p(&[1, 1, 0]), p(&[2, 3, 1])];
        let l = affine_intersection_line(&line, &line).unwrap();
        assert_eq!(l.parameter_of(&p(&[2, 3, 1])).unwrap(), Some(int(1)));

        let xy = [o.clone(), p(&[1, 0, 0]), p(&[0, 1, 0])];
        let z = [o.clone(), p(&[0, 0, 1])];
        assert_eq!(affine_intersection_line(&xy, &z), Err(KernelError::EmptyIntersection));
    }

    #[test]
    fn plane_meets_segment_span_in_that_segment_line() {
        // a full plane in R^2 together with the span of {c, v3}
        let c = p(&[1, 1]);
        let v1 = p(&[0, 0]);
        let v2 = p(&[4, 0]);
        let v3 = p(&[0, 4]);
        let l = affine_intersection_line(&[c.clone(), v1, v2], &[c.clone(), v3.clone()]).unwrap();
        assert_eq!(l.base, c);
        assert!(l.parameter_of(&v3).unwrap().is_some());
    }
}
