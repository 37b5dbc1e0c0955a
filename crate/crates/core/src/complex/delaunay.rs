use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ComplexError, Result, Triangulation};
use crate::kernel::linalg::{solve_affine, Matrix};
use crate::kernel::{circumsphere, sphere_side, strictly_feasible, Feasibility, Point, Scalar, SphereSide};

/// The four equivalent characterizations of a Delaunay triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DelaunayMode {
    /// Every facet's circumsphere has all other vertices strictly outside.
    FacetsEmpty,
    /// Every face of every dimension has a supporting sphere.
    AllFacesSupported,
    /// Every ridge has a supporting sphere.
    RidgesSupported,
    /// Every interior ridge is locally Delaunay.
    InteriorRidgesLocal,
}

impl DelaunayMode {
    pub const ALL: [DelaunayMode; 4] = [
        DelaunayMode::FacetsEmpty,
        DelaunayMode::AllFacesSupported,
        DelaunayMode::RidgesSupported,
        DelaunayMode::InteriorRidgesLocal,
    ];

    /// Modes are numbered 1 to 4 in the order of [`Self::ALL`].
    pub fn number(self) -> u8 {
        match self {
            DelaunayMode::FacetsEmpty => 1,
            DelaunayMode::AllFacesSupported => 2,
            DelaunayMode::RidgesSupported => 3,
            DelaunayMode::InteriorRidgesLocal => 4,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.get(usize::from(n).checked_sub(1)?).copied()
    }
}

/// A face with no supporting sphere, and a vertex that is on or inside every
/// candidate (for facets and local checks, inside or on the unique one).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub face: Vec<usize>,
    pub witness: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelaunayReport {
    pub mode: DelaunayMode,
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Linear conditions on the center of a sphere through the vertices of
/// `face`: centers are `base + sum(μ_j kernel_j)`, and vertex `others[i]` is
/// strictly outside iff `a[i]·μ > b[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSystem {
    pub base: Point,
    pub kernel: Vec<Point>,
    pub others: Vec<usize>,
    pub a: Vec<Vec<Scalar>>,
    pub b: Vec<Scalar>,
}

/// Builds the [`SupportSystem`] of `face` against every other vertex.
pub fn support_constraints(vertices: &[Point], face: &[usize]) -> Result<SupportSystem> {
    let p0 = &vertices[face[0]];
    let m = p0.dim();
    let n0 = p0.norm_sq();
    let mut rows: Matrix = Vec::new();
    let mut rhs = Vec::new();
    for &i in &face[1..] {
        let pi = &vertices[i];
        let two = Scalar::from_integer(2.into());
        rows.push(pi.sub(p0)?.scale(&two).into_coords());
        rhs.push(pi.norm_sq() - &n0);
    }
    let sol = solve_affine(&rows, &rhs, m).ok_or_else(|| ComplexError::DegenerateFacet(face.to_vec()))?;
    let base = Point::new(sol.particular);
    let kernel: Vec<Point> = sol.kernel.into_iter().map(Point::new).collect();
    let mut others = Vec::new();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (q, pq) in vertices.iter().enumerate() {
        if face.contains(&q) {
            continue;
        }
        // |c - q|^2 > |c - p0|^2  <=>  2<c, p0 - q> > |p0|^2 - |q|^2
        let diff = p0.sub(pq)?;
        let two = Scalar::from_integer(2.into());
        let row: Vec<Scalar> = kernel.iter().map(|k| Ok(&two * k.dot(&diff)?)).collect::<Result<_>>()?;
        let rhs_q = &n0 - pq.norm_sq() - &two * base.dot(&diff)?;
        others.push(q);
        a.push(row);
        b.push(rhs_q);
    }
    Ok(SupportSystem { base, kernel, others, a, b })
}

/// Runs one of the four Delaunay checks. Ties (cospherical vertices) are
/// reported as violations.
pub fn check_delaunay(t: &Triangulation, mode: DelaunayMode) -> Result<DelaunayReport> {
    let mut violations = match mode {
        DelaunayMode::FacetsEmpty => facets_empty(t)?,
        DelaunayMode::AllFacesSupported => all_faces_supported(t)?,
        DelaunayMode::RidgesSupported => ridges_supported(t)?,
        DelaunayMode::InteriorRidgesLocal => interior_ridges_local(t)?,
    };
    violations.sort();
    violations.dedup();
    Ok(DelaunayReport { mode, ok: violations.is_empty(), violations })
}

fn facets_empty(t: &Triangulation) -> Result<Vec<Violation>> {
    let per_facet: Vec<Vec<Violation>> = t
        .facets()
        .par_iter()
        .map(|f| {
            let s = circumsphere(&t.points(f))?;
            let mut out = Vec::new();
            for (q, p) in t.vertices().iter().enumerate() {
                if !f.contains(&q) && sphere_side(&s, p)? != SphereSide::Outside {
                    out.push(Violation { face: f.clone(), witness: q });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_facet.into_iter().flatten().collect())
}

fn interior_ridges_local(t: &Triangulation) -> Result<Vec<Violation>> {
    let ridges: Vec<(Vec<usize>, usize, usize)> = t.interior_ridges().map(|(r, a, b)| (r.clone(), a, b)).collect();
    let found: Vec<Option<Violation>> = ridges
        .par_iter()
        .map(|(r, v1, v2)| {
            let mut pts = t.points(r);
            pts.push(t.vertex(*v1).clone());
            let s = circumsphere(&pts)?;
            Ok((sphere_side(&s, t.vertex(*v2))? != SphereSide::Outside)
                .then(|| Violation { face: r.clone(), witness: *v2 }))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

fn ridges_supported(t: &Triangulation) -> Result<Vec<Violation>> {
    let ridges: Vec<&Vec<usize>> = t.ridges().keys().collect();
    let found: Vec<Option<Violation>> = ridges
        .par_iter()
        .map(|r| {
            let sys = support_constraints(t.vertices(), r)?;
            debug_assert_eq!(sys.kernel.len(), 1);
            Ok(interval_witness(&sys).map(|w| Violation { face: (*r).clone(), witness: w }))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// One-parameter feasibility by intersecting open half-lines. Returns the
/// vertex that closes the interval, if it is empty.
fn interval_witness(sys: &SupportSystem) -> Option<usize> {
    let mut lower: Option<(Scalar, usize)> = None;
    let mut upper: Option<(Scalar, usize)> = None;
    for ((row, bq), &q) in sys.a.iter().zip(&sys.b).zip(&sys.others) {
        let aq = &row[0];
        if aq.is_zero() {
            if !bq.is_negative() {
                return Some(q);
            }
            continue;
        }
        let bound = bq / aq;
        if aq.is_positive() {
            if lower.as_ref().is_none_or(|(l, _)| bound > *l) {
                lower = Some((bound, q));
            }
        } else if upper.as_ref().is_none_or(|(u, _)| bound < *u) {
            upper = Some((bound, q));
        }
    }
    match (lower, upper) {
        (Some((l, _)), Some((u, q))) if l >= u => Some(q),
        _ => None,
    }
}

fn all_faces_supported(t: &Triangulation) -> Result<Vec<Violation>> {
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in t.facets() {
        for mask in 1u32..(1 << f.len()) {
            faces.insert(f.iter().enumerate().filter(|&(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect());
        }
    }
    let faces: Vec<Vec<usize>> = faces.into_iter().collect();
    let found: Vec<Option<Violation>> = faces
        .par_iter()
        .map(|face| {
            let sys = support_constraints(t.vertices(), face)?;
            Ok(match strictly_feasible(&sys.a, &sys.b, sys.kernel.len()) {
                Feasibility::Feasible(_) => None,
                Feasibility::Infeasible { witness } => {
                    Some(Violation { face: face.clone(), witness: sys.others[witness] })
                }
            })
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}
