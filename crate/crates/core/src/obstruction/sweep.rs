use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::angle::{angle_obstruction_2d, AngleDiagnostic, AngleObstruction, Spoke, TriangleConfig};
use super::inversion::{reduce_by_inversion, RidgeDiagnostic};
use super::split::{classify_split, split_geometry, SplitGeometry};
use super::{ObstructionError, Result};
use crate::builder::{expand_at, BuildConfig};
use crate::complex::{check_delaunay, stellar_subdivide, DelaunayMode, Triangulation};
use crate::kernel::{int, invert_in_sphere, point_in_simplex, Point, SimplexLocation};
use crate::random::{derive_seed, Sampler};
use crate::trees::{max_degree, DualTree};

const COORDINATE_BOUND: i64 = 8;

/// A random simplex in `R^(d-1)` subdivided once at a random interior point;
/// simplex vertices are `0..d`, the center is `d`.
pub fn random_split(s: &mut Sampler, d: usize) -> Result<Triangulation> {
    let m = d - 1;
    let pts = s.simplex(m, COORDINATE_BOUND);
    let c = s.interior_point(&pts);
    let simplex = Triangulation::new(m, pts, vec![(0..=m).collect()])?;
    Ok(stellar_subdivide(&simplex, &(0..=m).collect::<Vec<_>>(), c)?)
}

/// Subdivides the first three facets of a split simplex at random interior
/// points; the new vertices are `d + 1`, `d + 2`, `d + 3` in facet order.
pub fn subdivide_three(s: &mut Sampler, delta: &Triangulation) -> Result<Triangulation> {
    let roles = classify_split(delta)?;
    let mut t = delta.clone();
    for i in 0..3 {
        let f = roles.facet(i);
        let r = s.interior_point(&t.points(&f));
        t = stellar_subdivide(&t, &f, r)?;
    }
    Ok(t)
}

/// Planar configuration of a random triangle split at `x` with each part
/// split again.
pub fn random_triangle_config(s: &mut Sampler) -> TriangleConfig {
    let pts = s.simplex(2, COORDINATE_BOUND);
    let corners = [pts[0].clone(), pts[1].clone(), pts[2].clone()];
    let x = s.interior_point(&pts);
    let [a_, b_, c_] = &corners;
    let inner = [
        s.interior_point(&[x.clone(), b_.clone(), c_.clone()]),
        s.interior_point(&[x.clone(), c_.clone(), a_.clone()]),
        s.interior_point(&[x.clone(), a_.clone(), b_.clone()]),
    ];
    TriangleConfig { corners, x, inner }
}

/// A random split simplex (`d > 3`) with three subdivision points chosen so
/// that each one's image under inversion at `x` stays inside the inverted
/// facet. `None` if no such instance turned up within `tries` simplices.
pub fn pipeline_instance(
    s: &mut Sampler,
    d: usize,
    tries: usize,
) -> Result<Option<(Triangulation, SplitGeometry, Triangulation)>> {
    let one = int(1);
    'outer: for _ in 0..tries {
        let delta = random_split(s, d)?;
        let g = split_geometry(&delta, 3)?;
        if delta.vertices().contains(&g.x) {
            continue;
        }
        let mut t = delta.clone();
        for i in 0..3 {
            let f = g.roles.facet(i);
            let pts = delta.points(&f);
            let inv: Vec<Point> =
                pts.iter().map(|p| invert_in_sphere(&g.x, &one, p)).collect::<std::result::Result<_, _>>()?;
            if point_in_simplex(&inv, &invert_in_sphere(&g.x, &one, &pts[0])?).is_err() {
                continue 'outer;
            }
            let mut found = None;
            for attempt in 0..64 {
                // sampling in the original facet keeps coordinates small
                let (r, r_img) = if attempt >= 48 {
                    let r_img = s.interior_point(&inv);
                    (invert_in_sphere(&g.x, &one, &r_img)?, r_img)
                } else {
                    let r = s.interior_point(&pts);
                    let img = invert_in_sphere(&g.x, &one, &r)?;
                    (r, img)
                };
                if point_in_simplex(&pts, &r)? == SimplexLocation::Interior
                    && point_in_simplex(&inv, &r_img)? == SimplexLocation::Interior
                {
                    found = Some(r);
                    break;
                }
            }
            let Some(r) = found else { continue 'outer };
            t = stellar_subdivide(&t, &f, r)?;
        }
        return Ok(Some((delta, g, t)));
    }
    Ok(None)
}

/// A random split simplex with a random `k`, and one or two of its first `k`
/// facets subdivided by the Delaunay-preserving expansion at the center.
pub fn new_facet_instance(
    s: &mut Sampler,
    d: usize,
    cfg: &BuildConfig,
) -> Result<(Triangulation, SplitGeometry, Triangulation)> {
    let delta = random_split(s, d)?;
    let k = 1 + s.index(d - 1);
    let g = split_geometry(&delta, k)?;
    let first = s.index(k);
    let mut faces = vec![g.roles.facet(first)];
    if k > 1 && s.index(2) == 1 {
        let second = (first + 1 + s.index(k - 1)) % k;
        faces.push(g.roles.facet(second));
    }
    let e = expand_at(&delta, g.roles.center, &faces, cfg)?;
    Ok((delta, g, e.triangulation))
}

/// What the inversion route found on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineStages {
    pub coplanar: bool,
    pub projected_type_ok: bool,
    pub plane_coordinates: Vec<Vec<String>>,
    pub failing_spokes: Vec<Spoke>,
    pub angles: AngleDiagnostic,
    pub ridge: Option<RidgeDiagnostic>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub seed: u64,
    /// Ridges reported by the direct locally-Delaunay check.
    pub failing_ridges: Vec<Vec<usize>>,
    /// Planar obstruction on the instance itself (`d = 3`).
    pub angle: Option<AngleObstruction>,
    /// Inversion route (`d > 3`, when a suitable instance was sampled).
    pub pipeline: Option<PipelineStages>,
    pub violated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifyReport {
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    /// Tree node of degree at least four and its degree.
    pub witness: Option<(usize, usize)>,
    pub violated_trials: usize,
    pub all_violated: bool,
    pub reports: Vec<TrialReport>,
}

fn run_trial(d: usize, seed: u64) -> Result<TrialReport> {
    let mut s = Sampler::new(seed);
    let mut pipeline = None;
    let mut angle = None;
    let t = if d > 3 {
        match pipeline_instance(&mut s, d, 16)? {
            Some((_, g, t)) => {
                let red = reduce_by_inversion(&t, &g)?;
                let obstruction = angle_obstruction_2d(&red.projected)?;
                pipeline = Some(PipelineStages {
                    coplanar: red.coplanar,
                    projected_type_ok: red.projected_type_ok,
                    plane_coordinates: red.plane_coordinates,
                    failing_spokes: obstruction.failing,
                    angles: obstruction.approximate,
                    ridge: red.ridge,
                });
                t
            }
            None => {
                let delta = random_split(&mut s, d)?;
                subdivide_three(&mut s, &delta)?
            }
        }
    } else {
        let delta = random_split(&mut s, d)?;
        let t = subdivide_three(&mut s, &delta)?;
        let v = |i: usize| t.vertex(i).clone();
        let cfg = TriangleConfig { corners: [v(0), v(1), v(2)], x: v(3), inner: [v(4), v(5), v(6)] };
        angle = Some(angle_obstruction_2d(&cfg)?);
        t
    };
    let failing_ridges: Vec<Vec<usize>> =
        check_delaunay(&t, DelaunayMode::InteriorRidgesLocal)?.violations.into_iter().map(|v| v.face).collect();
    let violated = !failing_ridges.is_empty()
        && angle.as_ref().is_none_or(AngleObstruction::is_obstructed)
        && pipeline.as_ref().is_none_or(|p| p.coplanar && p.projected_type_ok && !p.failing_spokes.is_empty());
    Ok(TrialReport { seed, failing_ridges, angle, pipeline, violated })
}

/// Random realizations of a simplex split at its center with three of the
/// resulting facets subdivided again, each checked for a Delaunay
/// violation. Trial `i` uses a seed derived from `seed` and `i`.
pub fn certify_sweep(d: usize, trials: usize, seed: u64) -> Result<CertifyReport> {
    if d < 3 {
        return Err(ObstructionError::BadInput(format!("dimension {d} < 3")));
    }
    let reports: Vec<TrialReport> =
        (0..trials).into_par_iter().map(|i| run_trial(d, derive_seed(seed, i as u64))).collect::<Result<_>>()?;
    let violated_trials = reports.iter().filter(|r| r.violated).count();
    Ok(CertifyReport {
        d,
        trials,
        seed,
        witness: None,
        violated_trials,
        all_violated: violated_trials == trials,
        reports,
    })
}

/// Runs [`certify_sweep`] for a tree that has a node of degree at least four.
pub fn certify_tree(tree: &DualTree, d: usize, trials: usize, seed: u64) -> Result<CertifyReport> {
    let (deg, node) = max_degree(tree);
    if deg < 4 {
        return Err(ObstructionError::NotObstructed(deg));
    }
    let mut r = certify_sweep(d, trials, seed)?;
    r.witness = Some((node, deg));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_are_all_violated() {
        for d in [3, 4] {
            let r = certify_sweep(d, 6, 11).unwrap();
            assert!(r.all_violated, "{r:?}");
        }
        assert_eq!(certify_sweep(3, 3, 5).unwrap(), certify_sweep(3, 3, 5).unwrap());
    }

    #[test]
    fn path_tree_is_not_obstructed() {
        assert_eq!(certify_tree(&DualTree::path(5).unwrap(), 3, 1, 0), Err(ObstructionError::NotObstructed(2)));
    }
}
