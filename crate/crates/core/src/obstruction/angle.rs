use std::f64::consts::PI;
use std::fmt;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{ObstructionError, Result};
use crate::kernel::linalg::solve_affine;
use crate::kernel::{face_circumsphere, sphere_side, Point, Scalar, SphereSide};

/// A triangle `ABC` split at an interior point `x`, with each of the three
/// small triangles split again: `a` inside `xBC`, `b` inside `xCA`, `c`
/// inside `xAB`. All points lie in one 2-plane of some `R^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleConfig {
    /// `A`, `B`, `C`.
    pub corners: [Point; 3],
    pub x: Point,
    /// `a`, `b`, `c`.
    pub inner: [Point; 3],
}

/// One of the edges joining a corner to `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Spoke {
    Ax,
    Bx,
    Cx,
}

impl Spoke {
    pub const ALL: [Spoke; 3] = [Spoke::Ax, Spoke::Bx, Spoke::Cx];

    fn corner(self) -> usize {
        self as usize
    }

    /// Indices into `inner` of the apexes of the two triangles on this edge.
    fn apexes(self) -> (usize, usize) {
        match self {
            Spoke::Ax => (2, 1),
            Spoke::Bx => (2, 0),
            Spoke::Cx => (0, 1),
        }
    }
}

impl fmt::Display for Spoke {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCheck {
    pub edge: Spoke,
    /// Side of the second apex relative to the circle through the edge and
    /// the first apex; the edge is locally Delaunay iff this is `Outside`.
    pub side: SphereSide,
}

/// Floating-point angles at `a`, `b`, `c` (three each). Approximate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleDiagnostic {
    pub angles: Vec<f64>,
    pub total: f64,
    /// `|total - 6π| / 6π`.
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleObstruction {
    pub edges: Vec<EdgeCheck>,
    pub failing: Vec<Spoke>,
    pub approximate: AngleDiagnostic,
}

/// Coordinates of `p` with respect to the triangle `t` in its plane, or
/// `None` if `p` is off that plane or the triangle is degenerate.
fn plane_barycentric(t: [&Point; 3], p: &Point) -> Option<[Scalar; 3]> {
    let u = t[1].sub(t[0]).ok()?;
    let v = t[2].sub(t[0]).ok()?;
    let w = p.sub(t[0]).ok()?;
    let rows: Vec<Vec<Scalar>> = (0..u.dim()).map(|r| vec![u[r].clone(), v[r].clone()]).collect();
    let sol = solve_affine(&rows, w.coords(), 2)?;
    if !sol.kernel.is_empty() {
        return None;
    }
    let [l1, l2] = [sol.particular[0].clone(), sol.particular[1].clone()];
    let l0 = Scalar::from_integer(1.into()) - &l1 - &l2;
    Some([l0, l1, l2])
}

fn strictly_inside(t: [&Point; 3], p: &Point) -> bool {
    plane_barycentric(t, p).is_some_and(|b| b.iter().all(Signed::is_positive))
}

/// Checks the combinatorial type by exact barycentric signs.
pub fn check_configuration(cfg: &TriangleConfig) -> Result<()> {
    let [a_, b_, c_] = &cfg.corners;
    let x = &cfg.x;
    let wrong = |s: &str| Err(ObstructionError::WrongCombinatorialType(s.into()));
    if !strictly_inside([a_, b_, c_], x) {
        return wrong("x is not inside ABC");
    }
    if !strictly_inside([x, b_, c_], &cfg.inner[0]) {
        return wrong("a is not inside xBC");
    }
    if !strictly_inside([x, c_, a_], &cfg.inner[1]) {
        return wrong("b is not inside xCA");
    }
    if !strictly_inside([x, a_, b_], &cfg.inner[2]) {
        return wrong("c is not inside xAB");
    }
    Ok(())
}

fn to_f64(p: &Point) -> Vec<f64> {
    p.coords().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
}

fn angle(at: &[f64], p: &[f64], q: &[f64]) -> f64 {
    let u: Vec<f64> = p.iter().zip(at).map(|(a, b)| a - b).collect();
    let v: Vec<f64> = q.iter().zip(at).map(|(a, b)| a - b).collect();
    let dot: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
    let uu: f64 = u.iter().map(|a| a * a).sum();
    let vv: f64 = v.iter().map(|a| a * a).sum();
    (uu * vv - dot * dot).max(0.0).sqrt().atan2(dot)
}

fn angle_diagnostic(cfg: &TriangleConfig) -> AngleDiagnostic {
    let [a_, b_, c_] = cfg.corners.clone().map(|p| to_f64(&p));
    let x = to_f64(&cfg.x);
    let [a, b, c] = cfg.inner.clone().map(|p| to_f64(&p));
    // each inner point sees the three sides of its small triangle
    let around = [(&a, [&x, &b_, &c_]), (&b, [&x, &c_, &a_]), (&c, [&x, &a_, &b_])];
    let mut angles = Vec::with_capacity(9);
    for (p, [q0, q1, q2]) in around {
        angles.push(angle(p, q0, q1));
        angles.push(angle(p, q1, q2));
        angles.push(angle(p, q2, q0));
    }
    let total: f64 = angles.iter().sum();
    AngleDiagnostic { angles, total, relative_error: (total - 6.0 * PI).abs() / (6.0 * PI) }
}

/// Exact locally-Delaunay test of the three edges `Ax`, `Bx`, `Cx`; at least
/// one always fails.
pub fn angle_obstruction_2d(cfg: &TriangleConfig) -> Result<AngleObstruction> {
    check_configuration(cfg)?;
    let mut edges = Vec::with_capacity(3);
    for e in Spoke::ALL {
        let (p, q) = e.apexes();
        let circle = face_circumsphere(&[cfg.corners[e.corner()].clone(), cfg.x.clone(), cfg.inner[p].clone()])?;
        edges.push(EdgeCheck { edge: e, side: sphere_side(&circle, &cfg.inner[q])? });
    }
    let failing = edges.iter().filter(|c| c.side != SphereSide::Outside).map(|c| c.edge).collect();
    Ok(AngleObstruction { edges, failing, approximate: angle_diagnostic(cfg) })
}

impl AngleObstruction {
    pub fn is_obstructed(&self) -> bool {
        !self.failing.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, ratio};

    fn pt(x: Scalar, y: Scalar) -> Point {
        Point::new(vec![x, y])
    }

    fn centroid(ps: [&Point; 3]) -> Point {
        Point::centroid(&ps).unwrap()
    }

    fn symmetric() -> TriangleConfig {
        // nearly equilateral: height 7/4 against the ideal √3
        let corners = [pt(int(0), int(0)), pt(int(2), int(0)), pt(int(1), ratio(7, 4))];
        let x = centroid([&corners[0], &corners[1], &corners[2]]);
        let inner = [
            centroid([&x, &corners[1], &corners[2]]),
            centroid([&x, &corners[2], &corners[0]]),
            centroid([&x, &corners[0], &corners[1]]),
        ];
        TriangleConfig { corners, x, inner }
    }

    #[test]
    fn symmetric_configuration_fails_everywhere() {
        let r = angle_obstruction_2d(&symmetric()).unwrap();
        assert_eq!(r.failing, Spoke::ALL.to_vec());
        assert!(r.approximate.relative_error < 1e-12);
    }

    #[test]
    fn figure_like_configuration() {
        let c = TriangleConfig {
            corners: [pt(int(0), int(0)), pt(int(5), int(0)), pt(ratio(5, 2), int(4))],
            x: pt(ratio(5, 2), ratio(3, 2)),
            inner: [pt(ratio(19, 5), ratio(7, 5)), pt(ratio(7, 5), ratio(9, 5)), pt(ratio(13, 5), ratio(1, 2))],
        };
        let r = angle_obstruction_2d(&c).unwrap();
        assert!(r.is_obstructed());
        assert_eq!(r.edges.len(), 3);
    }

    #[test]
    fn wrong_type_is_rejected() {
        let mut c = symmetric();
        c.inner.swap(0, 1);
        assert!(matches!(angle_obstruction_2d(&c), Err(ObstructionError::WrongCombinatorialType(_))));
        let mut c = symmetric();
        c.x = pt(int(5), int(5));
        assert!(matches!(check_configuration(&c), Err(ObstructionError::WrongCombinatorialType(_))));
    }

    #[test]
    fn works_in_a_plane_of_higher_space() {
        let lift = |p: &Point| Point::new(vec![p[0].clone(), p[1].clone(), p[0].clone() + p[1].clone()]);
        let s = symmetric();
        let c = TriangleConfig {
            corners: s.corners.each_ref().map(lift),
            x: lift(&s.x),
            inner: s.inner.each_ref().map(lift),
        };
        assert!(angle_obstruction_2d(&c).unwrap().is_obstructed());
    }
}
