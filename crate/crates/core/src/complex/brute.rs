use super::{ComplexError, Facet, Result, Triangulation};
use crate::kernel::linalg::rank;
use crate::kernel::{circumsphere, orientation, sphere_side, Point, Sign, SphereSide};

/// Delaunay triangulation by testing every `(m + 1)`-subset for an empty
/// circumsphere. Refuses inputs with an affinely dependent `(m + 1)`-subset
/// or `m + 2` cospherical points, since the result would not be unique.
pub fn brute_force_delaunay(points: &[Point]) -> Result<Triangulation> {
    let m = points.first().map_or(0, Point::dim);
    if m < 2 {
        return Err(ComplexError::BadDimension(m));
    }
    for (i, p) in points.iter().enumerate() {
        if p.dim() != m {
            return Err(ComplexError::VertexDimension { vertex: i, expected: m, got: p.dim() });
        }
    }
    let rows: Vec<Vec<_>> = points[1..].iter().map(|p| Ok(p.sub(&points[0])?.into_coords())).collect::<Result<_>>()?;
    if points.len() < m + 1 || rank(&rows, m) < m {
        return Err(ComplexError::DegeneratePointSet("points do not affinely span".into()));
    }
    let mut facets: Vec<Facet> = Vec::new();
    for subset in combinations(points.len(), m + 1) {
        let simplex: Vec<Point> = subset.iter().map(|&i| points[i].clone()).collect();
        if orientation(&simplex)? == Sign::Zero {
            return Err(ComplexError::DegeneratePointSet(format!("{subset:?} is affinely dependent")));
        }
        let s = circumsphere(&simplex)?;
        let mut empty = true;
        for (q, pq) in points.iter().enumerate() {
            if subset.contains(&q) {
                continue;
            }
            match sphere_side(&s, pq)? {
                SphereSide::On => {
                    return Err(ComplexError::DegeneratePointSet(format!("{q} is cospherical with {subset:?}")))
                }
                SphereSide::Inside => empty = false,
                SphereSide::Outside => {}
            }
        }
        if empty {
            facets.push(subset);
        }
    }
    Triangulation::new(m, points.to_vec(), facets)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    #[test]
    fn small_inputs() {
        let t = brute_force_delaunay(&[p(&[0, 0]), p(&[1, 0]), p(&[0, 1])]).unwrap();
        assert_eq!(t.facets(), &[vec![0, 1, 2]]);
        let t = brute_force_delaunay(&[p(&[0, 0]), p(&[6, 0]), p(&[0, 6]), p(&[1, 2])]).unwrap();
        assert_eq!(t.facets(), &[vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        let t = brute_force_delaunay(&[p(&[0, 0]), p(&[3, 0]), p(&[3, 1]), p(&[0, 4])]).unwrap();
        assert_eq!(t.facets(), &[vec![0, 1, 2], vec![0, 2, 3]]);
    }

    #[test]
    fn degenerate_inputs() {
        let square = [p(&[0, 0]), p(&[1, 0]), p(&[1, 1]), p(&[0, 1])];
        assert!(matches!(brute_force_delaunay(&square), Err(ComplexError::DegeneratePointSet(_))));
        let collinear = [p(&[0, 0]), p(&[1, 0]), p(&[2, 0]), p(&[0, 5])];
        assert!(matches!(brute_force_delaunay(&collinear), Err(ComplexError::DegeneratePointSet(_))));
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(4, 4), vec![vec![0, 1, 2, 3]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
