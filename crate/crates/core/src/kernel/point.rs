use std::fmt;
use std::ops::Index;

use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::serde_scalar::ScalarVisitor;
use super::{check_dim, format_scalar, Result, Scalar};

/// A point (or vector) with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Scalar::zero(); dim])
    }

    /// `i`-th standard basis vector scaled by `s`.
    pub fn axis(dim: usize, i: usize, s: Scalar) -> Self {
        let mut p = Point::origin(dim);
        p.0[i] = s;
        p
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| super::scalar::int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn sub(&self, other: &Point) -> Result<Point> {
        check_dim(self.dim(), other.dim())?;
        Ok(Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn add(&self, other: &Point) -> Result<Point> {
        check_dim(self.dim(), other.dim())?;
        Ok(Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, s: &Scalar) -> Point {
        Point(self.0.iter().map(|a| a * s).collect())
    }

    /// `self + s * dir`.
    pub fn add_scaled(&self, s: &Scalar, dir: &Point) -> Result<Point> {
        check_dim(self.dim(), dir.dim())?;
        Ok(Point(self.0.iter().zip(&dir.0).map(|(a, b)| a + s * b).collect()))
    }

    pub fn dot(&self, other: &Point) -> Result<Scalar> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    pub fn norm_sq(&self) -> Scalar {
        self.0.iter().map(|a| a * a).sum()
    }

    pub fn dist_sq(&self, other: &Point) -> Result<Scalar> {
        Ok(self.sub(other)?.norm_sq())
    }

    /// Drops the last coordinate.
    pub fn truncate_last(&self) -> Point {
        Point(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    /// Affine combination `sum(w_i * p_i)`; weights are not normalized.
    pub fn combination(points: &[&Point], weights: &[Scalar]) -> Result<Point> {
        let dim = points.first().map_or(0, |p| p.dim());
        let mut acc = Point::origin(dim);
        for (p, w) in points.iter().zip(weights) {
            acc = acc.add_scaled(w, p)?;
        }
        Ok(acc)
    }

    /// Coordinatewise mean.
    pub fn centroid(points: &[&Point]) -> Result<Point> {
        let n = Scalar::from_integer(points.len().into());
        let w = vec![Scalar::from_integer(1.into()) / n; points.len()];
        Point::combination(points, &w)
    }
}

impl Index<usize> for Point {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_scalar(c))?;
        }
        write!(f, ")")
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            seq.serialize_element(&format_scalar(c))?;
        }
        seq.end()
    }
}

struct Coord(Scalar);

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(ScalarVisitor).map(Coord)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords: Vec<Coord> = Vec::deserialize(d)?;
        Ok(Point(coords.into_iter().map(|c| c.0).collect()))
    }
}

impl From<Vec<Scalar>> for Point {
    fn from(v: Vec<Scalar>) -> Self {
        Point(v)
    }
}
