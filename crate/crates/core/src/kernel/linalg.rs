//! Exact Gaussian elimination over [`Scalar`].
//!
//! Pivoting is deterministic: columns are scanned left to right and the pivot
//! is the first row (in row order) with a nonzero entry in that column.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form plus the pivot column of each nonzero row.
pub fn rref(mut a: Matrix, ncols: usize) -> (Matrix, Vec<usize>) {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = Scalar::one() / &a[row][col];
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[row].clone();
        for (r, other) in a.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(a: &Matrix, ncols: usize) -> usize {
    rref(a.clone(), ncols).1.len()
}

/// Rows scaled to integers by the lcm of their denominators, with the
/// product of the scales.
fn integer_rows(a: &Matrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut total = BigInt::one();
    let rows = a
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            total *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    (rows, total)
}

/// Fraction-free forward elimination over the first `n` columns of `m`
/// (all columns are updated). Returns the sign of the row permutation, or
/// `None` if a pivot column is zero.
fn bareiss(m: &mut [Vec<BigInt>], n: usize) -> Option<bool> {
    let width = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut flipped = false;
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero())?;
        if p != k {
            m.swap(p, k);
            flipped = !flipped;
        }
        for i in k + 1..n {
            for j in k + 1..width {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Some(flipped)
}

/// Determinant by fraction-free elimination. Panics on a non-square input.
pub fn determinant(a: Matrix) -> Scalar {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "determinant of non-square matrix");
    if n == 0 {
        return Scalar::one();
    }
    let (mut m, scale) = integer_rows(&a);
    match bareiss(&mut m, n) {
        None => Scalar::zero(),
        Some(flipped) => {
            let det = Scalar::new(m[n - 1][n - 1].clone(), scale);
            if flipped {
                -det
            } else {
                det
            }
        }
    }
}

/// Basis of `{x : A x = 0}`. One vector per free column, in increasing column
/// order; each has a one in its free column and zeros in the other free columns.
pub fn nullspace(a: &Matrix, ncols: usize) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(a.clone(), ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solution set `particular + span(kernel)` of `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

/// Solves `A x = b` for `x` of length `ncols`; `None` when inconsistent.
pub fn solve_affine(a: &Matrix, b: &[Scalar], ncols: usize) -> Option<AffineSolution> {
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(aug, ncols + 1);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut particular = vec![Scalar::zero(); ncols];
    for (i, &pc) in pivots.iter().enumerate() {
        particular[pc] = r[i][ncols].clone();
    }
    // the first `ncols` columns of `r` are the reduced form of `a`
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[i][free].clone();
        }
        kernel.push(v);
    }
    Some(AffineSolution { particular, kernel })
}

/// Unique solution of a square system, or `None` if singular.
pub fn solve_unique(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n) && b.len() == n, "solve_unique needs a square system");
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (mut m, _) = integer_rows(&aug);
    bareiss(&mut m, n)?;
    let mut x = vec![Scalar::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Scalar::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= Scalar::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Scalar::from_integer(m[i][i].clone());
    }
    Some(x)
}
