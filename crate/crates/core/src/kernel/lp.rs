//! Exact strict feasibility of a system of linear inequalities.

use num_traits::{One, Signed, Zero};

use super::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// A point `μ` with `a_i·μ > b_i` for every row.
    Feasible(Vec<Scalar>),
    /// No strict solution; `witness` is a row carrying the largest dual
    /// multiplier of the infeasibility certificate.
    Infeasible { witness: usize },
}

/// Decides whether `a_i·μ > b_i` has a solution `μ ∈ R^k`.
///
/// Homogenized as: maximize `s` subject to `s ≤ a_i·μ - b_i τ`, `s ≤ τ`, with
/// `μ = μ⁺ - μ⁻` and every variable boxed in `[0, 1]`. The origin is feasible,
/// and the system is strictly solvable iff the optimum is positive. Solved by
/// the primal simplex method with Bland's rule, in exact arithmetic.
pub fn strictly_feasible(a: &[Vec<Scalar>], b: &[Scalar], k: usize) -> Feasibility {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let rows_in = a.len();
    let nvar = 2 * k + 2;
    let tau = 2 * k;
    let s = 2 * k + 1;
    let nrows = rows_in + 1 + nvar;
    let ncols = nvar + nrows;

    let mut t: Vec<Vec<Scalar>> = Vec::with_capacity(nrows + 1);
    for (row, bi) in a.iter().zip(b) {
        assert_eq!(row.len(), k, "row length mismatch");
        let mut r = vec![Scalar::zero(); ncols + 1];
        for j in 0..k {
            r[j] = -row[j].clone();
            r[k + j] = row[j].clone();
        }
        r[tau] = bi.clone();
        r[s] = Scalar::one();
        t.push(r);
    }
    let mut r = vec![Scalar::zero(); ncols + 1];
    r[tau] = -Scalar::one();
    r[s] = Scalar::one();
    t.push(r);
    for j in 0..nvar {
        let mut r = vec![Scalar::zero(); ncols + 1];
        r[j] = Scalar::one();
        r[ncols] = Scalar::one();
        t.push(r);
    }
    for (i, r) in t.iter_mut().enumerate() {
        r[nvar + i] = Scalar::one();
    }
    let mut obj = vec![Scalar::zero(); ncols + 1];
    obj[s] = -Scalar::one();
    let mut basis: Vec<usize> = (nvar..ncols).collect();

    while let Some(enter) = (0..ncols).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Scalar)> = None;
        for (i, r) in t.iter().enumerate() {
            if !r[enter].is_positive() {
                continue;
            }
            let ratio = &r[ncols] / &r[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // every variable is boxed, so the problem is bounded
        let (pr, _) = leave.expect("bounded program");
        let pivot = t[pr][enter].clone();
        for v in t[pr].iter_mut() {
            *v /= &pivot;
        }
        let prow = t[pr].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != pr && !r[enter].is_zero() {
                eliminate(r, &prow, enter);
            }
        }
        eliminate(&mut obj, &prow, enter);
        basis[pr] = enter;
    }

    if obj[ncols].is_positive() {
        let mut x = vec![Scalar::zero(); nvar];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < nvar {
                x[bv] = t[i][ncols].clone();
            }
        }
        let mu: Vec<Scalar> = (0..k).map(|j| (&x[j] - &x[k + j]) / &x[tau]).collect();
        Feasibility::Feasible(mu)
    } else {
        let mut best = 0;
        for i in 1..rows_in {
            if obj[nvar + i] > obj[nvar + best] {
                best = i;
            }
        }
        Feasibility::Infeasible { witness: best }
    }
}

fn eliminate(row: &mut [Scalar], prow: &[Scalar], col: usize) {
    let f = row[col].clone();
    for (v, p) in row.iter_mut().zip(prow) {
        if !p.is_zero() {
            *v -= &f * p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::{int, ratio};

    fn check(a: &[Vec<Scalar>], b: &[Scalar], mu: &[Scalar]) -> bool {
        a.iter().zip(b).all(|(row, bi)| {
            let v: Scalar = row.iter().zip(mu).map(|(x, y)| x * y).sum();
            v > *bi
        })
    }

    #[test]
    fn interval_cases() {
        // μ > 1 and -μ > -3
        let a = vec![vec![int(1)], vec![int(-1)]];
        let b = vec![int(1), int(-3)];
        match strictly_feasible(&a, &b, 1) {
            Feasibility::Feasible(mu) => assert!(check(&a, &b, &mu)),
            f => panic!("{f:?}"),
        }
        // μ > 1 and -μ > -1: empty open interval
        let b = vec![int(1), int(-1)];
        assert!(matches!(strictly_feasible(&a, &b, 1), Feasibility::Infeasible { .. }));
    }

    #[test]
    fn large_solution_is_found() {
        // μ > 1000 requires scaling through τ
        let a = vec![vec![int(1)]];
        let b = vec![int(1000)];
        match strictly_feasible(&a, &b, 1) {
            Feasibility::Feasible(mu) => assert!(check(&a, &b, &mu)),
            f => panic!("{f:?}"),
        }
    }

    #[test]
    fn zero_variables() {
        assert!(matches!(strictly_feasible(&[vec![], vec![]], &[int(-1), ratio(-1, 2)], 0), Feasibility::Feasible(_)));
        assert_eq!(strictly_feasible(&[vec![], vec![]], &[int(-1), int(0)], 0), Feasibility::Infeasible { witness: 1 });
    }

    #[test]
    fn triangle_in_plane() {
        // x > 0, y > 0, x + y < 1
        let a = vec![vec![int(1), int(0)], vec![int(0), int(1)], vec![int(-1), int(-1)]];
        let b = vec![int(0), int(0), int(-1)];
        match strictly_feasible(&a, &b, 2) {
            Feasibility::Feasible(mu) => assert!(check(&a, &b, &mu)),
            f => panic!("{f:?}"),
        }
        let b = vec![int(0), int(0), int(0)];
        assert!(matches!(strictly_feasible(&a, &b, 2), Feasibility::Infeasible { .. }));
    }
}
