//! Volume polynomials and mixed volumes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{RationalPolytope, RationalVector};
use crate::error::{Error, Result};
use crate::linalg;
use crate::par;
use crate::rational::{self, Rational};

/// `Vol_d(λ_1 K_1 + ... + λ_r K_r)` as a homogeneous polynomial of degree `d`
/// in `λ`. Every exponent vector of total degree `d` has an entry, zero or
/// not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumePolynomial {
    num_bodies: usize,
    degree: usize,
    coefficients: BTreeMap<Vec<u32>, Rational>,
}

impl VolumePolynomial {
    pub fn num_bodies(&self) -> usize {
        self.num_bodies
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.coefficients
    }

    /// Coefficient of `λ^e` (zero for exponents of the wrong degree).
    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.coefficients.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn evaluate(&self, lambda: &[Rational]) -> Rational {
        self.coefficients
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(lambda)
                    .fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize))
            })
            .sum()
    }

    /// `MV_d(K_d)`: the body `K_i` repeated `e_i` times, which equals `e!`
    /// times the coefficient of `λ^e`.
    pub fn mixed_volume(&self, e: &[u32]) -> Result<Rational> {
        if e.len() != self.num_bodies {
            return Err(Error::WrongBodyCount {
                expected: self.num_bodies,
                found: e.len(),
            });
        }
        let total: u32 = e.iter().sum();
        if total as usize != self.degree {
            return Err(Error::InvalidArgument(format!(
                "multidegree {e:?} has total {total}, expected {}",
                self.degree
            )));
        }
        let fact: BigInt = e.iter().map(|&k| rational::factorial(k)).product();
        Ok(self.coefficient(e) * Rational::from_integer(fact))
    }
}

fn check_dims(bodies: &[RationalPolytope]) -> Result<usize> {
    let first = bodies.first().ok_or(Error::EmptyInput("body list"))?;
    let d = first.dim();
    if let Some(b) = bodies.iter().find(|b| b.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: b.dim(),
        });
    }
    Ok(d)
}

/// Volume of `Σ λ_i K_i` for non-negative integer weights.
fn weighted_sum_volume(bodies: &[RationalPolytope], lambda: &[u32]) -> Rational {
    let d = bodies[0].dim();
    let mut sum = RationalPolytope::point(RationalVector::zero(d));
    for (k, &l) in bodies.iter().zip(lambda) {
        if l > 0 {
            let scaled = k.scale(&rational::int(l as i64));
            sum = sum.minkowski_sum(&scaled).expect("dimensions checked");
        }
    }
    sum.volume()
}

/// Interpolates the volume polynomial from its values on `{0..d}^r`.
pub fn volume_polynomial(bodies: &[RationalPolytope]) -> Result<VolumePolynomial> {
    let d = check_dims(bodies)?;
    let r = bodies.len();
    let side = d + 1;
    let grid: Vec<Vec<u32>> = (0..side.pow(r as u32))
        .map(|mut idx| {
            let mut l = vec![0u32; r];
            for slot in l.iter_mut().rev() {
                *slot = (idx % side) as u32;
                idx /= side;
            }
            l
        })
        .collect();
    let mut values = par::map(&grid, |l| weighted_sum_volume(bodies, l));

    let vandermonde: Vec<Vec<Rational>> = (0..side)
        .map(|x| (0..side).map(|k| rational::pow_int(x as u64, k as u32)).collect())
        .collect();
    let inv = linalg::inverse(&vandermonde).expect("Vandermonde matrix on distinct nodes");
    // Apply the inverse along each axis of the row-major tensor.
    for axis in 0..r {
        let stride = side.pow((r - 1 - axis) as u32);
        let block = stride * side;
        let mut next = values.clone();
        for start in (0..values.len()).step_by(block) {
            for offset in 0..stride {
                let fiber: Vec<&Rational> =
                    (0..side).map(|j| &values[start + offset + j * stride]).collect();
                for k in 0..side {
                    next[start + offset + k * stride] = (0..side)
                        .map(|j| &inv[k][j] * fiber[j])
                        .fold(Rational::zero(), |a, b| a + b);
                }
            }
        }
        values = next;
    }

    let mut coefficients = BTreeMap::new();
    for (e, c) in grid.into_iter().zip(values) {
        let total: u32 = e.iter().sum();
        if total as usize == d {
            if c.is_negative() {
                return Err(Error::Internal(format!(
                    "negative volume polynomial coefficient {c} at {e:?}"
                )));
            }
            coefficients.insert(e, c);
        } else if !c.is_zero() {
            return Err(Error::Internal(format!(
                "volume polynomial has a term of degree {total} at {e:?}"
            )));
        }
    }
    Ok(VolumePolynomial {
        num_bodies: r,
        degree: d,
        coefficients,
    })
}

fn check_count(bodies: &[RationalPolytope]) -> Result<usize> {
    let d = check_dims(bodies)?;
    if bodies.len() != d {
        return Err(Error::WrongBodyCount {
            expected: d,
            found: bodies.len(),
        });
    }
    Ok(d)
}

/// Inclusion-exclusion over the Minkowski sums of all non-empty subsets.
pub fn mixed_volume_polarization(bodies: &[RationalPolytope]) -> Result<Rational> {
    let d = check_count(bodies)?;
    let masks: Vec<u64> = (1..1u64 << d).collect();
    let terms = par::map(&masks, |&mask| {
        let lambda: Vec<u32> = (0..d).map(|i| ((mask >> i) & 1) as u32).collect();
        let vol = weighted_sum_volume(bodies, &lambda);
        if (d - mask.count_ones() as usize) % 2 == 0 {
            vol
        } else {
            -vol
        }
    });
    Ok(terms.into_iter().sum())
}

/// Coefficient of `λ_1 ⋯ λ_d` in the volume polynomial.
pub fn mixed_volume_interpolation(bodies: &[RationalPolytope]) -> Result<Rational> {
    check_count(bodies)?;
    let poly = volume_polynomial(bodies)?;
    Ok(poly.coefficient(&vec![1; bodies.len()]))
}

/// `MV_d(K_1, ..., K_d)`, computed both by polarization and by interpolation;
/// a disagreement is reported as an internal error.
pub fn mixed_volume(bodies: &[RationalPolytope]) -> Result<Rational> {
    let a = mixed_volume_polarization(bodies)?;
    let b = mixed_volume_interpolation(bodies)?;
    if a != b {
        return Err(Error::Internal(format!(
            "mixed volume routes disagree: polarization {a}, interpolation {b}"
        )));
    }
    Ok(a)
}

/// `MV_d` of the multiset taking `K_i` with multiplicity `e_i`.
pub fn mixed_volume_multidegree(bodies: &[RationalPolytope], e: &[u32]) -> Result<Rational> {
    volume_polynomial(bodies)?.mixed_volume(e)
}
