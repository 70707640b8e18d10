//! Dense-tableau primal simplex over exact rationals with Bland's rule.
//!
//! Solves `max c.x  s.t.  A x <= b, x >= 0` with `b >= 0`, so the slack basis
//! is feasible from the start and no phase one is needed.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub value: BigRational,
    pub x: Vec<BigRational>,
    /// Optimal dual multipliers, one per constraint row.
    pub duals: Vec<BigRational>,
    pub pivots: usize,
}

pub fn maximize(c: &[BigRational], a: &[Vec<BigRational>], b: &[BigRational]) -> Result<LpSolution> {
    let n = c.len();
    let m = a.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return invalid("constraint matrix shape mismatch");
    }
    if b.iter().any(|v| v.is_negative()) {
        return invalid("right-hand side must be nonnegative");
    }
    let width = n + m + 1;
    // Rows 0..m are constraints; row m is the objective (reduced costs).
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for (i, row) in a.iter().enumerate() {
        let mut r = vec![BigRational::zero(); width];
        r[..n].clone_from_slice(row);
        r[n + i] = BigRational::from_integer(1.into());
        r[width - 1] = b[i].clone();
        t.push(r);
    }
    let mut obj = vec![BigRational::zero(); width];
    for (j, cj) in c.iter().enumerate() {
        obj[j] = -cj.clone();
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut pivots = 0;

    loop {
        let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else {
            return Err(Error::Unbounded);
        };
        pivot(&mut t, row, enter);
        basis[row] = enter;
        pivots += 1;
    }

    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    let duals = (0..m).map(|i| t[m][n + i].clone()).collect();
    Ok(LpSolution { value: t[m][width - 1].clone(), x, duals, pivots })
}

fn pivot(t: &mut [Vec<BigRational>], row: usize, col: usize) {
    let p = t[row][col].clone();
    for v in t[row].iter_mut() {
        *v /= &p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (v, pv) in r.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let c = [r(3, 1), r(5, 1)];
        let a = vec![vec![r(1, 1), r(0, 1)], vec![r(0, 1), r(2, 1)], vec![r(3, 1), r(2, 1)]];
        let b = [r(4, 1), r(12, 1), r(18, 1)];
        let sol = maximize(&c, &a, &b).unwrap();
        assert_eq!(sol.value, r(36, 1));
        assert_eq!(sol.x, vec![r(2, 1), r(6, 1)]);
        // Strong duality: b.y equals the optimum.
        let dual_obj: BigRational = b.iter().zip(&sol.duals).map(|(bi, yi)| bi * yi).sum();
        assert_eq!(dual_obj, sol.value);
    }

    #[test]
    fn fractional_optimum() {
        // max x + y s.t. 3x + y <= 2, x + 3y <= 2 -> x = y = 1/2
        let c = [r(1, 1), r(1, 1)];
        let a = vec![vec![r(3, 1), r(1, 1)], vec![r(1, 1), r(3, 1)]];
        let sol = maximize(&c, &a, &[r(2, 1), r(2, 1)]).unwrap();
        assert_eq!(sol.value, r(1, 1));
        assert_eq!(sol.x, vec![r(1, 2), r(1, 2)]);
    }

    #[test]
    fn unbounded_and_bad_input() {
        let c = [r(1, 1)];
        let a = vec![vec![r(-1, 1)]];
        assert!(matches!(maximize(&c, &a, &[r(1, 1)]), Err(Error::Unbounded)));
        assert!(maximize(&c, &a, &[r(-1, 1)]).is_err());
    }
}
