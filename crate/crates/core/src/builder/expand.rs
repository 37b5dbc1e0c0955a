use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{BuildConfig, BuildError, Result};
use crate::complex::{stellar_subdivide, Facet, Triangulation};
use crate::kernel::linalg::{nullspace, solve_unique, Matrix};
use crate::kernel::{
    circumsphere, int, point_in_simplex, serde_scalar, sphere_side, Line, Point, Scalar, SimplexLocation, Sphere,
    SphereSide,
};

/// The simplex `0, s·e_1, ..., s·e_m` of `R^m`, `m = d - 1`, as a one-facet
/// triangulation.
pub fn initial_simplex(d: usize, scale: &Scalar) -> Result<Triangulation> {
    if d < 3 {
        return Err(BuildError::BadDimension(d));
    }
    if !scale.is_positive() {
        return Err(BuildError::BadScale);
    }
    let m = d - 1;
    let mut vertices = vec![Point::origin(m)];
    vertices.extend((0..m).map(|i| Point::axis(m, i, scale.clone())));
    Ok(Triangulation::new(m, vertices, vec![(0..d).collect()])?)
}

/// [`initial_simplex`] stellar-subdivided at its barycenter, which becomes
/// vertex `d`.
pub fn init_root(d: usize, scale: &Scalar) -> Result<Triangulation> {
    let t = initial_simplex(d, scale)?;
    let facet: Facet = (0..d).collect();
    Ok(stellar_subdivide(&t, &facet, barycenter(&t, &facet)?)?)
}

pub(crate) fn barycenter(t: &Triangulation, facet: &[usize]) -> Result<Point> {
    let pts = t.points(facet);
    let refs: Vec<&Point> = pts.iter().collect();
    Ok(Point::centroid(&refs)?)
}

fn star_of_simple(t: &Triangulation, c: usize) -> Result<Vec<Facet>> {
    let star: Vec<Facet> = t.star(c).into_iter().cloned().collect();
    if star.len() != t.dim() + 1 || !t.is_interior_vertex(c)? {
        return Err(BuildError::NotSimpleInterior(c));
    }
    Ok(star)
}

/// Directions orthogonal to `c - center_i` for the circumspheres of `keep`:
/// the kernel basis, followed by the sum of the basis when it has more than
/// one vector. Each is scaled so its largest coordinate has absolute value 1.
fn tangent_directions(t: &Triangulation, c: usize, keep: &[Facet]) -> Result<Vec<Point>> {
    let pc = t.vertex(c);
    let rows: Matrix =
        keep.iter().map(|f| Ok(pc.sub(&circumsphere(&t.points(f))?.center)?.into_coords())).collect::<Result<_>>()?;
    let kernel = nullspace(&rows, t.dim());
    if kernel.is_empty() {
        return Err(BuildError::DegenerateNormals);
    }
    let mut dirs: Vec<Point> = kernel.iter().cloned().map(Point::new).collect();
    if dirs.len() > 1 {
        let mut sum = Point::origin(t.dim());
        for k in &dirs {
            sum = sum.add(k)?;
        }
        dirs.push(sum);
    }
    Ok(dirs.into_iter().filter(|d| !d.is_zero()).map(normalize_max).collect())
}

fn normalize_max(p: Point) -> Point {
    let m = p.coords().iter().map(Signed::abs).max().expect("nonzero vector");
    p.scale(&m.recip())
}

/// Line through vertex `c` tangent to the circumspheres of the `d - 2`
/// facets in `keep`.
pub fn tangent_line(t: &Triangulation, c: usize, keep: &[Facet]) -> Result<Line> {
    let star = star_of_simple(t, c)?;
    let d = t.dim() + 1;
    if keep.len() != d - 2 || keep.iter().any(|f| !star.contains(f)) || has_duplicates(keep) {
        return Err(BuildError::BadFaces(keep.to_vec()));
    }
    let dir = tangent_directions(t, c, keep)?.remove(0);
    Ok(Line::new(t.vertex(c).clone(), dir)?)
}

fn has_duplicates(fs: &[Facet]) -> bool {
    fs.iter().enumerate().any(|(i, f)| fs[..i].contains(f))
}

/// Points on both sides of `c` used for subdividing `f1` and `f2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointChoice {
    pub x1: Point,
    pub x2: Point,
    /// Step length along the tangent direction before grid snapping.
    #[serde(with = "serde_scalar")]
    pub lambda: Scalar,
    /// Tangent direction oriented from `c` into `f1`.
    pub direction: Point,
}

/// Coefficients of `dir` in the edge basis of `facet` at its vertex `c`.
fn cone_coefficients(t: &Triangulation, c: usize, facet: &[usize], dir: &Point) -> Result<Vec<Scalar>> {
    let pc = t.vertex(c);
    let edges: Vec<Point> =
        facet.iter().filter(|&&v| v != c).map(|&v| t.vertex(v).sub(pc)).collect::<std::result::Result<_, _>>()?;
    let m = t.dim();
    let a: Matrix = (0..m).map(|r| edges.iter().map(|e| e[r].clone()).collect()).collect();
    solve_unique(&a, dir.coords()).ok_or(BuildError::DegenerateDirection)
}

fn strictly_inside_cone(coeffs: &[Scalar]) -> bool {
    coeffs.iter().all(Signed::is_positive)
}

/// Orients `dir` so the ray from `c` enters `f1`; when `f2` is given, the
/// opposite ray must enter it.
fn orient(t: &Triangulation, c: usize, f1: &[usize], f2: Option<&[usize]>, dir: &Point) -> Result<Point> {
    let coeffs = cone_coefficients(t, c, f1, dir)?;
    let oriented = if strictly_inside_cone(&coeffs) {
        dir.clone()
    } else if coeffs.iter().all(Signed::is_negative) {
        dir.scale(&-Scalar::one())
    } else {
        return Err(BuildError::DegenerateDirection);
    };
    if let Some(f2) = f2 {
        let back = oriented.scale(&-Scalar::one());
        if !strictly_inside_cone(&cone_coefficients(t, c, f2, &back)?) {
            return Err(BuildError::DegenerateDirection);
        }
    }
    Ok(oriented)
}

fn snap(p: &Point, bits: u64) -> Point {
    let grid = Scalar::from_integer(BigInt::one() << bits);
    Point::new(p.coords().iter().map(|x| (x * &grid).round() / &grid).collect())
}

struct Search<'a> {
    t: &'a Triangulation,
    c: usize,
    f1: &'a [usize],
    f2: &'a [usize],
    both: bool,
    spheres: Vec<(&'a Facet, Sphere)>,
}

impl Search<'_> {
    fn admissible(&self, x1: &Point, x2: &Point) -> Result<bool> {
        if point_in_simplex(&self.t.points(self.f1), x1)? != SimplexLocation::Interior {
            return Ok(false);
        }
        if self.both && point_in_simplex(&self.t.points(self.f2), x2)? != SimplexLocation::Interior {
            return Ok(false);
        }
        for (f, s) in &self.spheres {
            if f.as_slice() == self.f1 || (self.both && f.as_slice() == self.f2) {
                continue;
            }
            if sphere_side(s, x1)? != SphereSide::Outside {
                return Ok(false);
            }
            if self.both && sphere_side(s, x2)? != SphereSide::Outside {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Halves `λ` from 1. For each `λ`, the target `c + λ·dir` is tried
    /// snapped to dyadic grids of growing precision and then exactly; the
    /// partner point is the reflection `2c - x1`, so `c` stays the midpoint.
    fn run(&self, dir: &Point, cap: u32) -> Result<PointChoice> {
        let pc = self.t.vertex(self.c);
        let two = int(2);
        let mut lambda = Scalar::one();
        for j in 0..cap {
            let target = pc.add_scaled(&lambda, dir)?;
            let j = u64::from(j);
            let mut candidates: Vec<Point> = [j + 4, 2 * j + 8, 2 * j + 24].iter().map(|&b| snap(&target, b)).collect();
            candidates.push(target);
            candidates.dedup();
            for x1 in candidates {
                let x2 = pc.scale(&two).sub(&x1)?;
                if x1 != *pc && self.admissible(&x1, &x2)? {
                    return Ok(PointChoice { x1, x2, lambda, direction: dir.clone() });
                }
            }
            lambda /= &two;
        }
        Err(BuildError::SearchExhausted(cap))
    }
}

pub(crate) fn all_spheres(t: &Triangulation) -> Result<Vec<(&Facet, Sphere)>> {
    t.facets().iter().map(|f| Ok((f, circumsphere(&t.points(f))?))).collect()
}

/// Picks `x1` in the interior of `f1` and `x2` in the interior of `f2`, with
/// `c` the midpoint of `x1 x2` and both points strictly outside the
/// circumsphere of every other facet. `line` must pass through `c`.
pub fn choose_points(
    t: &Triangulation,
    c: usize,
    f1: &[usize],
    f2: &[usize],
    line: &Line,
    cfg: &BuildConfig,
) -> Result<PointChoice> {
    let star = star_of_simple(t, c)?;
    if f1 == f2 || !star.iter().any(|f| f == f1) || !star.iter().any(|f| f == f2) {
        return Err(BuildError::BadFaces(vec![f1.to_vec(), f2.to_vec()]));
    }
    let dir = orient(t, c, f1, Some(f2), &line.direction)?;
    let search = Search { t, c, f1, f2, both: true, spheres: all_spheres(t)? };
    search.run(&dir, cfg.halving_cap)
}

/// Result of subdividing one or two facets at a simple interior vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub triangulation: Triangulation,
    /// Ids of the inserted vertices, in the order of `faces`.
    pub new_vertices: Vec<usize>,
    /// Exact tangent line used (oriented into the first face).
    pub line: Line,
    pub choice: PointChoice,
}

/// Subdivides one or two facets at the interior degree-`d` vertex `c` so
/// the result stays Delaunay. With one facet, another facet at `c` serves as
/// the partner that fixes the tangent line, and only `x1` is inserted.
pub fn expand_at(t: &Triangulation, c: usize, faces: &[Facet], cfg: &BuildConfig) -> Result<Expansion> {
    let star = star_of_simple(t, c)?;
    let bad = || BuildError::BadFaces(faces.to_vec());
    if faces.is_empty() || faces.len() > 2 || has_duplicates(faces) {
        return Err(bad());
    }
    if faces.iter().any(|f| !star.contains(f)) {
        return Err(bad());
    }
    let f1 = &faces[0];
    let partners: Vec<&Facet> = match faces.get(1) {
        Some(f2) => vec![f2],
        None => star.iter().filter(|f| *f != f1).collect(),
    };
    let both = faces.len() == 2;
    let spheres = all_spheres(t)?;
    let mut last_err = BuildError::DegenerateDirection;
    for f2 in partners {
        let keep: Vec<Facet> = star.iter().filter(|f| *f != f1 && *f != f2).cloned().collect();
        let dirs = match tangent_directions(t, c, &keep) {
            Ok(d) => d,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        for dir in dirs {
            let dir = match orient(t, c, f1, both.then_some(f2.as_slice()), &dir) {
                Ok(d) => d,
                Err(e) => {
                    last_err = e;
                    continue;
                }
            };
            let search = Search { t, c, f1, f2, both, spheres: spheres.clone() };
            match search.run(&dir, cfg.halving_cap) {
                Ok(choice) => {
                    let line = Line::new(t.vertex(c).clone(), dir)?;
                    let mut out = stellar_subdivide(t, f1, choice.x1.clone())?;
                    let mut new_vertices = vec![out.num_vertices() - 1];
                    if both {
                        out = stellar_subdivide(&out, f2, choice.x2.clone())?;
                        new_vertices.push(out.num_vertices() - 1);
                    }
                    return Ok(Expansion { triangulation: out, new_vertices, line, choice });
                }
                Err(e) => last_err = e,
            }
        }
    }
    Err(last_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{check_delaunay, DelaunayMode};
    use num_traits::Zero;

    #[test]
    fn root_shapes() {
        let t = init_root(3, &int(1)).unwrap();
        assert_eq!((t.num_vertices(), t.num_facets()), (4, 3));
        let t = init_root(4, &int(1)).unwrap();
        assert_eq!((t.num_vertices(), t.num_facets()), (5, 4));
        for d in 3..=6 {
            let t = init_root(d, &int(1)).unwrap();
            assert!(check_delaunay(&t, DelaunayMode::FacetsEmpty).unwrap().ok);
        }
        assert_eq!(init_root(2, &int(1)), Err(BuildError::BadDimension(2)));
        assert_eq!(init_root(3, &int(0)), Err(BuildError::BadScale));
    }

    #[test]
    fn tangent_line_is_tangent() {
        let t = init_root(4, &int(1)).unwrap();
        let star: Vec<Facet> = t.star(4).into_iter().cloned().collect();
        let keep = star[2..].to_vec();
        let line = tangent_line(&t, 4, &keep).unwrap();
        for f in &keep {
            let s = circumsphere(&t.points(f)).unwrap();
            let radial = t.vertex(4).sub(&s.center).unwrap();
            assert!(radial.dot(&line.direction).unwrap().is_zero());
        }
        assert!(matches!(tangent_line(&t, 0, &keep), Err(BuildError::NotSimpleInterior(0))));
    }

    #[test]
    fn two_face_expansion_in_the_plane() {
        let t = init_root(3, &int(1)).unwrap();
        let star: Vec<Facet> = t.star(3).into_iter().cloned().collect();
        let e = expand_at(&t, 3, &star[..2], &BuildConfig::default()).unwrap();
        let out = &e.triangulation;
        assert_eq!((out.num_vertices(), out.num_facets()), (6, 7));
        for mode in DelaunayMode::ALL {
            assert!(check_delaunay(out, mode).unwrap().ok, "{mode:?}");
        }
        for &v in &e.new_vertices {
            assert_eq!(out.vertex_degree(v).unwrap(), 3);
            assert!(out.is_interior_vertex(v).unwrap());
        }
        let mid = e.choice.x1.add(&e.choice.x2).unwrap().scale(&crate::kernel::ratio(1, 2));
        assert_eq!(&mid, t.vertex(3));
    }

    #[test]
    fn choose_points_respects_all_other_spheres() {
        let t = init_root(3, &int(1)).unwrap();
        let star: Vec<Facet> = t.star(3).into_iter().cloned().collect();
        let line = tangent_line(&t, 3, &star[2..]).unwrap();
        let ch = choose_points(&t, 3, &star[0], &star[1], &line, &BuildConfig::default()).unwrap();
        for f in t.facets() {
            if *f == star[0] || *f == star[1] {
                continue;
            }
            let s = circumsphere(&t.points(f)).unwrap();
            assert_eq!(sphere_side(&s, &ch.x1).unwrap(), SphereSide::Outside);
            assert_eq!(sphere_side(&s, &ch.x2).unwrap(), SphereSide::Outside);
        }
    }

    #[test]
    fn single_face_expansion() {
        let t = init_root(4, &int(1)).unwrap();
        let star: Vec<Facet> = t.star(4).into_iter().cloned().collect();
        let e = expand_at(&t, 4, &star[1..2], &BuildConfig::default()).unwrap();
        assert_eq!(e.new_vertices, vec![5]);
        assert_eq!(e.triangulation.num_facets(), 4 + 3);
        assert!(check_delaunay(&e.triangulation, DelaunayMode::FacetsEmpty).unwrap().ok);
    }
}
