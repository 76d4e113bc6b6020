//! Exact polynomial fitting on integer sample points.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Solution};
use crate::rational::{self, Rational};

/// All vectors of `parts` non-negative integers summing to `total`, in
/// lexicographic order.
pub fn compositions(parts: usize, total: u32) -> Vec<Vec<u32>> {
    fn go(parts: usize, total: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == parts {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=total {
            cur.push(x);
            go(parts, total - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(parts, total, &mut Vec::new(), &mut out);
    out
}

fn monomial_value(exponents: &[u32], point: &[u32]) -> Rational {
    exponents
        .iter()
        .zip(point)
        .fold(Rational::from_integer(1.into()), |acc, (&e, &x)| {
            acc * rational::pow_int(x as u64, e)
        })
}

/// Leading coefficient of the degree-`degree` polynomial through the
/// samples `(m, value)`. The first `degree + 1` samples determine the
/// polynomial; every further sample must lie on it.
pub fn leading_coefficient(samples: &[(u32, Rational)], degree: u32) -> Result<Rational> {
    let k = degree as usize + 1;
    if samples.len() <= k {
        return Err(Error::InvalidArgument(format!(
            "need at least {} samples to fit and check a degree {degree} polynomial, got {}",
            k + 1,
            samples.len()
        )));
    }
    let rows: Vec<Vec<Rational>> = samples[..k]
        .iter()
        .map(|(m, _)| (0..k).map(|j| rational::pow_int(*m as u64, j as u32)).collect())
        .collect();
    let rhs: Vec<Rational> = samples[..k].iter().map(|(_, v)| v.clone()).collect();
    let coeffs = match linalg::solve(rows, rhs) {
        Solution::Unique(c) => c,
        _ => return Err(Error::InvalidArgument("sample points must be distinct".into())),
    };
    for (m, v) in &samples[k..] {
        let at: Rational = coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * rational::pow_int(*m as u64, j as u32))
            .sum();
        if &at != v {
            return Err(Error::InconsistentFit(format!(
                "value {v} at m = {m} is off the degree {degree} polynomial through the first {k} samples (predicted {at})"
            )));
        }
    }
    Ok(coeffs[k - 1].clone())
}

/// Fits a homogeneous polynomial of the given degree in `vars` variables to
/// the samples, exactly. The fit must be unique and pass through every
/// sample.
pub fn fit_homogeneous(
    samples: &[(Vec<u32>, Rational)],
    vars: usize,
    degree: u32,
) -> Result<BTreeMap<Vec<u32>, Rational>> {
    let basis = compositions(vars, degree);
    let rows: Vec<Vec<Rational>> = samples
        .iter()
        .map(|(p, _)| basis.iter().map(|e| monomial_value(e, p)).collect())
        .collect();
    let rhs: Vec<Rational> = samples.iter().map(|(_, v)| v.clone()).collect();
    match linalg::solve(rows, rhs) {
        Solution::Unique(c) => Ok(basis.into_iter().zip(c).collect()),
        Solution::Inconsistent => Err(Error::InconsistentFit(format!(
            "no homogeneous polynomial of degree {degree} passes through the {} samples",
            samples.len()
        ))),
        Solution::Underdetermined { rank } => Err(Error::InconsistentFit(format!(
            "sample grid determines only {rank} of {} coefficients",
            compositions(vars, degree).len()
        ))),
    }
}

/// Evaluates a polynomial given as exponent ↦ coefficient.
pub fn evaluate(poly: &BTreeMap<Vec<u32>, Rational>, point: &[u32]) -> Rational {
    poly.iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| c * monomial_value(e, point))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3, 2).len(), 6);
        assert_eq!(compositions(1, 4), vec![vec![4]]);
        assert_eq!(compositions(0, 0), vec![Vec::<u32>::new()]);
        assert!(compositions(0, 1).is_empty());
        assert_eq!(compositions(2, 1), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn leading_coefficient_of_binomial() {
        // C(m + 2, 2) = m^2 / 2 + ...
        let samples: Vec<(u32, Rational)> = (1..=5u32)
            .map(|m| (m, int(((m + 2) * (m + 1) / 2) as i64)))
            .collect();
        assert_eq!(leading_coefficient(&samples, 2).unwrap(), frac(1, 2));
        let mut bad = samples.clone();
        bad[4].1 += int(1);
        assert!(matches!(leading_coefficient(&bad, 2), Err(Error::InconsistentFit(_))));
        assert!(leading_coefficient(&samples[..3], 2).is_err());
    }

    #[test]
    fn homogeneous_fit() {
        // (n1 + 2 n2)^2 / 2
        let mut samples = Vec::new();
        for a in 1..=3u32 {
            for b in 1..=3u32 {
                let v = Rational::from_integer(((a + 2 * b) * (a + 2 * b)).into()) / int(2);
                samples.push((vec![a, b], v));
            }
        }
        let fit = fit_homogeneous(&samples, 2, 2).unwrap();
        assert_eq!(fit[&vec![2, 0]], frac(1, 2));
        assert_eq!(fit[&vec![1, 1]], int(2));
        assert_eq!(fit[&vec![0, 2]], int(2));
        assert_eq!(evaluate(&fit, &[5, 7]), frac(361, 2));
        samples[0].1 += int(1);
        assert!(matches!(fit_homogeneous(&samples, 2, 2), Err(Error::InconsistentFit(_))));
        let too_few = vec![(vec![1, 1], int(1))];
        assert!(matches!(fit_homogeneous(&too_few, 2, 2), Err(Error::InconsistentFit(_))));
    }
}
