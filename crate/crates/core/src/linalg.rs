//! Small exact linear solvers over the rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Unique(Vec<Rational>),
    Inconsistent,
    /// The system is consistent but the solution is not unique; `rank` is
    /// the rank of the coefficient matrix.
    Underdetermined { rank: usize },
}

/// Solves `a x = b` by Gauss-Jordan elimination. `a` may have more rows than
/// columns.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Solution {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = Rational::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        b[r] *= &inv;
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                let delta = &f * &a[r][j];
                a[i][j] -= delta;
            }
            let delta = &f * &b[r];
            b[i] -= delta;
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return Solution::Inconsistent;
    }
    if r < cols {
        return Solution::Underdetermined { rank: r };
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = b[i].clone();
    }
    Solution::Unique(x)
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rational> = (0..n)
            .map(|i| if i == j { Rational::one() } else { Rational::zero() })
            .collect();
        match solve(a.to_vec(), e) {
            Solution::Unique(x) => columns.push(x),
            _ => return None,
        }
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| columns[j][i].clone()).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn overdetermined_consistent() {
        let a = vec![
            vec![int(1), int(1)],
            vec![int(1), int(-1)],
            vec![int(2), int(0)],
        ];
        let b = vec![int(3), int(1), int(4)];
        assert_eq!(solve(a, b), Solution::Unique(vec![int(2), int(1)]));
    }

    #[test]
    fn detects_inconsistency_and_rank_loss() {
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert_eq!(solve(a.clone(), vec![int(1), int(3)]), Solution::Inconsistent);
        assert_eq!(
            solve(a, vec![int(1), int(2)]),
            Solution::Underdetermined { rank: 1 }
        );
    }

    #[test]
    fn inverse_of_vandermonde() {
        let v: Vec<Vec<Rational>> = (0..3)
            .map(|x: i64| (0..3).map(|k| int(x.pow(k))).collect())
            .collect();
        let inv = inverse(&v).unwrap();
        assert_eq!(inv[2], vec![frac(1, 2), int(-1), frac(1, 2)]);
    }
}
