//! Counting monomials below a degree bound through staircase thresholds.
//!
//! For an ideal in `d` variables, membership of `(m', m_d)` is decided by a
//! threshold: `x^m` lies in the ideal iff `m_d >= t(m')`, where `t(m')` is the
//! least last exponent of a generator whose first `d - 1` exponents are
//! bounded by `m'`. The thresholds over the box `[0, N]^(d-1)` follow from a
//! prefix-minimum sweep, after which every count is a sum of column
//! lengths.

use super::{ExponentVector, MonomialIdeal};
use crate::error::{Error, Result};
use crate::par;

const INF: u32 = u32::MAX;

/// Threshold table of an ideal for monomials of degree at most `bound`.
pub struct Staircase {
    vars: usize,
    bound: u32,
    side: usize,
    thresholds: Vec<u32>,
}

impl Staircase {
    pub fn new(ideal: &MonomialIdeal, bound: u32) -> Staircase {
        let vars = ideal.num_vars();
        let k = vars - 1;
        let side = bound as usize + 1;
        let size = side
            .checked_pow(k as u32)
            .filter(|s| *s <= 1 << 31)
            .expect("degree bound too large for the staircase table");
        let mut thresholds = vec![INF; size];
        for g in ideal.generators() {
            let e = g.exponents();
            if e.iter().sum::<u32>() > bound {
                continue;
            }
            let idx = e[..k].iter().fold(0usize, |acc, &x| acc * side + x as usize);
            thresholds[idx] = thresholds[idx].min(e[k]);
        }
        let strides: Vec<usize> = (0..k).map(|i| side.pow((k - 1 - i) as u32)).collect();
        let mut coord = vec![0u32; k];
        for idx in 0..size {
            let mut t = thresholds[idx];
            for i in 0..k {
                if coord[i] > 0 {
                    t = t.min(thresholds[idx - strides[i]]);
                }
            }
            thresholds[idx] = t;
            for i in (0..k).rev() {
                coord[i] += 1;
                if coord[i] as usize == side {
                    coord[i] = 0;
                } else {
                    break;
                }
            }
        }
        Staircase {
            vars,
            bound,
            side,
            thresholds,
        }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Whether `x^m` is in the ideal; requires `|m| <= bound`.
    pub fn contains(&self, m: &[u32]) -> bool {
        let k = self.vars - 1;
        let idx = m[..k].iter().fold(0usize, |acc, &x| acc * self.side + x as usize);
        m[k] >= self.thresholds[idx]
    }

    fn slice_len(&self) -> usize {
        if self.vars == 1 {
            1
        } else {
            self.side.pow((self.vars - 2) as u32)
        }
    }

    /// Calls `f(|m'|, index)` for each `m'` in the box with `|m'| <= bound`,
    /// restricted to the slice where the first coordinate equals `first`.
    fn for_each_in_slice(&self, first: usize, mut f: impl FnMut(u32, usize)) {
        let k = self.vars - 1;
        if k == 0 {
            f(0, 0);
            return;
        }
        let len = self.slice_len();
        let mut coord = vec![0u32; k - 1];
        let mut sum = first as u32;
        for j in 0..len {
            if sum <= self.bound {
                f(sum, first * len + j);
            }
            for i in (0..k - 1).rev() {
                coord[i] += 1;
                sum += 1;
                if coord[i] as usize == self.side {
                    sum -= self.side as u32;
                    coord[i] = 0;
                } else {
                    break;
                }
            }
        }
    }

    fn slices(&self) -> usize {
        if self.vars == 1 {
            1
        } else {
            self.side
        }
    }

    fn sum_columns(&self, f: impl Fn(u32, u32) -> u64 + Sync + Send) -> u64 {
        par::sum_range(self.slices(), |s| {
            let mut acc = 0;
            self.for_each_in_slice(s, |sum, idx| {
                let top = self.bound - sum + 1;
                acc += f(self.thresholds[idx], top);
            });
            acc
        })
    }

    /// Number of monomials of degree at most `bound` outside the ideal.
    pub fn count_standard(&self) -> u64 {
        self.sum_columns(|t, top| t.min(top) as u64)
    }

    /// Number of monomials of degree at most `bound` inside the ideal.
    pub fn count_members(&self) -> u64 {
        self.sum_columns(|t, top| top.saturating_sub(t) as u64)
    }

    /// Largest degree of a monomial outside the ideal within the bound.
    pub fn max_standard_degree(&self) -> Option<u32> {
        let mut best = None;
        for s in 0..self.slices() {
            self.for_each_in_slice(s, |sum, idx| {
                let top = self.bound - sum + 1;
                let len = self.thresholds[idx].min(top);
                if len > 0 {
                    let deg = sum + len - 1;
                    best = Some(best.map_or(deg, |b: u32| b.max(deg)));
                }
            });
        }
        best
    }

    fn decode(&self, idx: usize) -> Vec<u32> {
        let k = self.vars - 1;
        let mut out = vec![0u32; k];
        let mut rest = idx;
        for slot in out.iter_mut().rev() {
            *slot = (rest % self.side) as u32;
            rest /= self.side;
        }
        out
    }

    /// Every monomial of the ideal with degree at most `bound`.
    pub fn members(&self) -> Vec<ExponentVector> {
        let mut out = Vec::new();
        for s in 0..self.slices() {
            self.for_each_in_slice(s, |sum, idx| {
                let t = self.thresholds[idx];
                let top = self.bound - sum;
                if t <= top {
                    let prefix = self.decode(idx);
                    for last in t..=top {
                        let mut e = prefix.clone();
                        e.push(last);
                        out.push(ExponentVector::new(e));
                    }
                }
            });
        }
        out
    }

    /// Monomials of the ideal of degree exactly `degree <= bound`.
    pub fn members_of_degree(&self, degree: u32) -> Vec<ExponentVector> {
        assert!(degree <= self.bound);
        let mut out = Vec::new();
        for s in 0..self.slices() {
            self.for_each_in_slice(s, |sum, idx| {
                if sum <= degree && self.thresholds[idx] <= degree - sum {
                    let mut e = self.decode(idx);
                    e.push(degree - sum);
                    out.push(ExponentVector::new(e));
                }
            });
        }
        out
    }
}

/// Number of monomials of degree at most `bound` lying in `a` but not in `b`.
///
/// Requires `b ⊆ a`. When every monomial of `a` above the bound lies in `b`
/// this is `dim_k(a / b)`.
pub fn quotient_dim(a: &MonomialIdeal, b: &MonomialIdeal, bound: i64) -> Result<u64> {
    let bound = check_args(a, b, bound)?;
    let sa = Staircase::new(a, bound);
    let sb = Staircase::new(b, bound);
    for g in b.generators() {
        let inside = if g.degree() <= bound {
            sa.contains(g.exponents())
        } else {
            a.contains(g.exponents())
        };
        if !inside {
            return Err(Error::NotContained {
                generator: g.to_string(),
            });
        }
    }
    Ok(count_difference(&sa, &sb))
}

/// `#{m : |m| <= bound, m ∈ a, m ∉ b}` without checking `b ⊆ a`.
pub(crate) fn count_between(a: &MonomialIdeal, b: &MonomialIdeal, bound: u32) -> u64 {
    count_difference(&Staircase::new(a, bound), &Staircase::new(b, bound))
}

fn count_difference(sa: &Staircase, sb: &Staircase) -> u64 {
    debug_assert_eq!(sa.bound, sb.bound);
    let bound = sa.bound;
    par::sum_range(sa.slices(), |s| {
        let mut acc = 0u64;
        sa.for_each_in_slice(s, |sum, idx| {
            let top = bound - sum + 1;
            let ta = sa.thresholds[idx].min(top);
            let tb = sb.thresholds[idx].min(top);
            acc += tb.saturating_sub(ta) as u64;
        });
        acc
    })
}

fn check_args(a: &MonomialIdeal, b: &MonomialIdeal, bound: i64) -> Result<u32> {
    if a.num_vars() != b.num_vars() {
        return Err(Error::VariableCountMismatch {
            expected: a.num_vars(),
            found: b.num_vars(),
        });
    }
    if bound < 0 {
        return Err(Error::NegativeBound(bound));
    }
    u32::try_from(bound).map_err(|_| Error::InvalidArgument(format!("degree bound {bound} too large")))
}

/// Same count as [`quotient_dim`] by visiting every monomial of degree at
/// most `bound` and testing divisibility against the generators.
pub fn quotient_dim_exhaustive(a: &MonomialIdeal, b: &MonomialIdeal, bound: i64) -> Result<u64> {
    let bound = check_args(a, b, bound)?;
    if let Some(g) = b.generators().iter().find(|g| !a.contains(g.exponents())) {
        return Err(Error::NotContained {
            generator: g.to_string(),
        });
    }
    let d = a.num_vars();
    let mut count = 0;
    let mut m = vec![0u32; d];
    loop {
        if a.contains(&m) && !b.contains(&m) {
            count += 1;
        }
        // Next exponent vector with |m| <= bound, in lexicographic order.
        let total: u32 = m.iter().sum();
        if total < bound {
            m[d - 1] += 1;
            continue;
        }
        let mut i = d - 1;
        loop {
            m[i] = 0;
            if i == 0 {
                return Ok(count);
            }
            i -= 1;
            let total: u32 = m.iter().sum();
            if total < bound {
                m[i] += 1;
                break;
            }
        }
    }
}
