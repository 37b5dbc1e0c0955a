use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gale::gale_evenness_facets;
use super::{GeneratorError, Result};
use crate::builder::{lift_delaunay, InscribedPolytope};
use crate::complex::{check_delaunay, combinations, DelaunayMode, Triangulation};
use crate::kernel::{
    hyperplane_side, int, inverse_stereographic, north_pole, ratio, Hyperplane, Point, Reflection, Scalar, Side,
};

/// Which curve realizes the cyclic polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CyclicMethod {
    /// Fast-growing points on `(t, t^2, ...)` in `R^(d-1)`, lifted.
    Standard,
    /// Points on the spherical moment curve.
    Spherical,
    /// Points on the trigonometric moment curve (even `d`).
    Trig,
}

const DOUBLING_CAP: u32 = 64;

fn moment_point(t: &Scalar, m: usize) -> Point {
    let mut coords = Vec::with_capacity(m);
    let mut p = t.clone();
    for _ in 0..m {
        coords.push(p.clone());
        p *= t;
    }
    Point::new(coords)
}

/// Facets of the convex hull of `points` (affinely spanning `R^d`) by testing
/// every `d`-subset. Errors if some hyperplane through `d` points also holds
/// another point and supports the hull.
pub fn hull_facets(points: &[Point]) -> Result<Vec<Vec<usize>>> {
    let d = points.first().map_or(0, Point::dim);
    let found: Vec<Option<Vec<usize>>> = combinations(points.len(), d)
        .into_par_iter()
        .map(|s| {
            let pts: Vec<Point> = s.iter().map(|&i| points[i].clone()).collect();
            let Ok(h) = Hyperplane::through(&pts) else { return Ok(None) };
            let (mut pos, mut neg, mut on) = (false, false, false);
            for (i, p) in points.iter().enumerate() {
                if s.contains(&i) {
                    continue;
                }
                match hyperplane_side(&h, p)? {
                    Side::Positive => pos = true,
                    Side::Negative => neg = true,
                    Side::On => on = true,
                }
            }
            if pos && neg {
                return Ok(None);
            }
            if on {
                return Err(GeneratorError::NotSimplicial(s));
            }
            Ok(Some(s))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

fn check_gale(p: &InscribedPolytope, n: usize) -> Result<()> {
    let expected: Vec<Vec<usize>> =
        gale_evenness_facets(p.d, n)?.into_iter().map(|f| f.into_iter().map(|i| i - 1).collect()).collect();
    if p.facets != expected {
        return Err(GeneratorError::GaleMismatch { expected: expected.len(), got: p.facets.len() });
    }
    Ok(())
}

/// Sends the last vertex to the north pole by a reflection and packages the
/// points with their hull facets.
fn finish(d: usize, points: Vec<Point>) -> Result<InscribedPolytope> {
    let n = points.len();
    let north = north_pole(d);
    let points = if points[n - 1] == north {
        points
    } else {
        let r = Reflection::onto(&points[n - 1], &north)?;
        points.iter().map(|p| r.apply(p)).collect::<std::result::Result<_, _>>()?
    };
    for (i, p) in points.iter().enumerate() {
        if !p.norm_sq().is_one() {
            return Err(GeneratorError::NotOnSphere(i));
        }
    }
    let facets = hull_facets(&points)?;
    let p = InscribedPolytope::new(d, n - 1, points, facets);
    check_gale(&p, n)?;
    Ok(p)
}

fn sorted_distinct(mut params: Vec<Scalar>) -> Result<Vec<Scalar>> {
    params.sort();
    if params.windows(2).any(|w| w[0] == w[1]) {
        return Err(GeneratorError::NonDistinctParams);
    }
    Ok(params)
}

/// `C_d(n)` from a Delaunay triangulation of `n - 1` points on the moment
/// curve of `R^(d-1)`, lifted with the north pole as vertex `n - 1`. The
/// first `d` parameters are `0, ..., d - 1`; each later one adds the
/// smallest doubling of 1 that puts the point outside every circumsphere.
pub fn cyclic_standard(d: usize, n: usize) -> Result<(InscribedPolytope, Vec<Scalar>)> {
    if d < 3 || n < d + 1 {
        return Err(GeneratorError::BadParameters(format!("need d >= 3 and n >= d + 1, got d = {d}, n = {n}")));
    }
    let m = d - 1;
    let mut params: Vec<Scalar> = (0..d).map(|i| int(i as i64)).collect();
    let mut t = Triangulation::new(m, params.iter().map(|s| moment_point(s, m)).collect(), vec![(0..d).collect()])?;
    while params.len() < n - 1 {
        let last = params.last().expect("nonempty").clone();
        let mut step = Scalar::one();
        let mut next = None;
        for _ in 0..DOUBLING_CAP {
            let s = &last + &step;
            if let Some(grown) = extend(&t, moment_point(&s, m))? {
                next = Some((s, grown));
                break;
            }
            step *= int(2);
        }
        let (s, grown) = next.ok_or(GeneratorError::GrowthCapExceeded(DOUBLING_CAP))?;
        params.push(s);
        t = grown;
    }
    let p = lift_delaunay(&t)?;
    check_gale(&p, n)?;
    Ok((p, params))
}

/// Adds `p` by coning over the boundary ridges it sees, if `p` is strictly
/// outside every circumsphere and the result is Delaunay.
fn extend(t: &Triangulation, p: Point) -> Result<Option<Triangulation>> {
    let mut vertices = t.vertices().to_vec();
    vertices.push(p.clone());
    let id = vertices.len() - 1;
    let mut facets = t.facets().to_vec();
    for r in t.boundary_ridges() {
        let h = Hyperplane::through(&t.points(r))?;
        let fi = t.ridges()[r][0];
        let opposite = *t.facets()[fi].iter().find(|v| !r.contains(v)).expect("facet has an apex");
        let inner = hyperplane_side(&h, t.vertex(opposite))?;
        match hyperplane_side(&h, &p)? {
            Side::On => return Ok(None),
            s if s != inner => {
                let mut f = r.clone();
                f.push(id);
                facets.push(f);
            }
            _ => {}
        }
    }
    let Ok(grown) = Triangulation::new(t.dim(), vertices, facets) else { return Ok(None) };
    Ok(check_delaunay(&grown, DelaunayMode::FacetsEmpty)?.ok.then_some(grown))
}

/// `C_d(n)` on the spherical moment curve
/// `c(t) = (1, t, ..., t^(d-1)) / (1 + t^2 + ... + t^(2(d-1)))`, which lies on
/// the sphere with center `e_1 / 2` and radius `1 / 2`; the output is mapped
/// to the unit sphere with the largest parameter at the north pole.
/// Parameters must be positive and distinct; they are used in sorted order.
pub fn cyclic_spherical(d: usize, params: &[Scalar]) -> Result<InscribedPolytope> {
    let n = params.len();
    if d < 2 || n < d + 1 {
        return Err(GeneratorError::BadParameters(format!("need d >= 2 and n >= d + 1, got d = {d}, n = {n}")));
    }
    if params.iter().any(|t| !t.is_positive()) {
        return Err(GeneratorError::BadParameters("parameters must be positive".into()));
    }
    let params = sorted_distinct(params.to_vec())?;
    let half = ratio(1, 2);
    let center = Point::axis(d, 0, half.clone());
    let quarter = ratio(1, 4);
    let mut points = Vec::with_capacity(n);
    for (i, t) in params.iter().enumerate() {
        let mut coords = vec![Scalar::one()];
        coords.extend(moment_point(t, d - 1).into_coords());
        let denom: Scalar = coords.iter().map(|c| c * c).sum();
        let v = Point::new(coords.into_iter().map(|c| c / &denom).collect());
        if v.dist_sq(&center)? != quarter {
            return Err(GeneratorError::NotOnSphere(i));
        }
        points.push(v.sub(&center)?.scale(&int(2)));
    }
    finish(d, points)
}

/// Positive rationals `a_1, ..., a_k` with `sum a_i^2 = 1`.
fn unit_weights(k: usize) -> Vec<Scalar> {
    if k == 1 {
        return vec![Scalar::one()];
    }
    for den in 2.. {
        let q = Point::new(vec![ratio(1, den); k - 1]);
        let w = inverse_stereographic(&q).into_coords();
        if w.iter().all(|x| !x.is_zero()) {
            return w.into_iter().map(|x| x.abs()).collect();
        }
    }
    unreachable!("some denominator gives nonzero weights")
}

/// `C_d(n)` (even `d`) on the trigonometric moment curve
/// `(sin t, cos t, ..., sin(d t / 2), cos(d t / 2))`, parameterized by the
/// half-angle tangents `s = tan(t / 2)` so that all coordinates are rational.
/// Each raw vertex has squared norm `d / 2`; the `k`-th coordinate pair is
/// then scaled by a rational `a_k` with `sum a_k^2 = 1`, a linear map that
/// keeps the combinatorics and puts the vertices on the unit sphere.
pub fn cyclic_trig(d: usize, half_tangents: &[Scalar]) -> Result<InscribedPolytope> {
    if d % 2 == 1 {
        return Err(GeneratorError::OddDimension(d));
    }
    let n = half_tangents.len();
    if d < 2 || n < d + 1 {
        return Err(GeneratorError::BadParameters(format!("need d >= 2 and n >= d + 1, got d = {d}, n = {n}")));
    }
    let params = sorted_distinct(half_tangents.to_vec())?;
    let k = d / 2;
    let target = ratio(d as i64, 2);
    let weights = unit_weights(k);
    let mut points = Vec::with_capacity(n);
    for (i, s) in params.iter().enumerate() {
        let q = Scalar::one() + s * s;
        let sin1 = (s * int(2)) / &q;
        let cos1 = (Scalar::one() - s * s) / &q;
        let (mut sin, mut cos) = (sin1.clone(), cos1.clone());
        let mut raw = Vec::with_capacity(d);
        for j in 0..k {
            if j > 0 {
                let next_sin = &sin * &cos1 + &cos * &sin1;
                let next_cos = &cos * &cos1 - &sin * &sin1;
                sin = next_sin;
                cos = next_cos;
            }
            raw.push(sin.clone());
            raw.push(cos.clone());
        }
        let raw = Point::new(raw);
        if raw.norm_sq() != target {
            return Err(GeneratorError::NotOnSphere(i));
        }
        let scaled = raw.coords().iter().enumerate().map(|(c, x)| x * &weights[c / 2]).collect();
        points.push(Point::new(scaled));
    }
    finish(d, points)
}
