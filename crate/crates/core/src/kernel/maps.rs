use num_traits::{One, Zero};

use super::{check_dim, KernelError, Point, Result, Scalar};

/// `center + radius_sq * (p - center) / |p - center|^2`.
pub fn invert_in_sphere(center: &Point, radius_sq: &Scalar, p: &Point) -> Result<Point> {
    let diff = p.sub(center)?;
    let n = diff.norm_sq();
    if n.is_zero() {
        return Err(KernelError::CenterInversion);
    }
    center.add_scaled(&(radius_sq / n), &diff)
}

/// `N = e_d` in `R^d`.
pub fn north_pole(d: usize) -> Point {
    Point::axis(d, d - 1, Scalar::one())
}

/// Projects the unit sphere minus `N` onto the hyperplane `x_d = 0`,
/// returning the first `d - 1` coordinates.
pub fn stereographic_project(p: &Point) -> Result<Point> {
    if p.dim() == 0 || !p.norm_sq().is_one() {
        return Err(KernelError::NotOnSphere);
    }
    let last = &p[p.dim() - 1];
    let denom = Scalar::one() - last;
    if denom.is_zero() {
        return Err(KernelError::NorthPole);
    }
    Ok(p.truncate_last().scale(&denom.recip()))
}

/// Inverse of [`stereographic_project`]: `q -> (2q, |q|^2 - 1) / (|q|^2 + 1)`.
pub fn inverse_stereographic(q: &Point) -> Point {
    let s = q.norm_sq();
    let inv = (&s + Scalar::one()).recip();
    let two = Scalar::from_integer(2.into());
    let mut coords: Vec<Scalar> = q.coords().iter().map(|x| x * &two * &inv).collect();
    coords.push((s - Scalar::one()) * inv);
    Point::new(coords)
}

/// Householder reflection of `R^d` exchanging two vectors of equal norm.
/// Orthogonal with rational entries, so it maps rational points on a sphere
/// centered at the origin to rational points on the same sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reflection {
    u: Point,
    u_norm_sq: Scalar,
}

impl Reflection {
    /// Reflection across the hyperplane orthogonal to `target - from`; the
    /// identity when the two coincide.
    pub fn onto(from: &Point, target: &Point) -> Result<Self> {
        check_dim(from.dim(), target.dim())?;
        if from.norm_sq() != target.norm_sq() {
            return Err(KernelError::NormMismatch);
        }
        let u = target.sub(from)?;
        let u_norm_sq = u.norm_sq();
        Ok(Reflection { u, u_norm_sq })
    }

    pub fn apply(&self, p: &Point) -> Result<Point> {
        if self.u_norm_sq.is_zero() {
            check_dim(self.u.dim(), p.dim())?;
            return Ok(p.clone());
        }
        let k = Scalar::from_integer(2.into()) * self.u.dot(p)? / &self.u_norm_sq;
        p.add_scaled(&-k, &self.u)
    }
}

/// Reflection moving `from` onto `target`; see [`Reflection::onto`].
pub fn reflect_onto(from: &Point, target: &Point) -> Result<Reflection> {
    Reflection::onto(from, target)
}
