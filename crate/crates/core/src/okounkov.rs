//! Lattice semigroups attached to graded families and their level counts.
//!
//! For an m-primary family `I`, families `J(1), ..., J(r)`, a degree
//! `(n_0, n)` and a constant `c`, level `m` of the semigroup `Γ` consists of
//! the exponents `e` with `x^e ∈ J_{mn} = J(1)_{m n_1} ⋯ J(r)_{m n_r}` and
//! `|e| <= c m (n_0 + |n|)`; for `Γ̂` the ideal is `I_{m n_0} J_{mn}`
//! instead. Their difference counts `dim_k J_{mn} / I_{m n_0} J_{mn}`, and
//! normalized counts converge to volumes of Newton–Okounkov bodies.

use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::family::{family_product_ideal, GradedFamily};
use crate::monomial::{self, ExponentVector, MonomialIdeal, Staircase};
use crate::multiplicity::check_schedule;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Plain,
    Hat,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Hat => "hat",
        }
    }
}

/// `c = max(β + 1, c')` with `β` the largest generator bound among the `J`
/// families and `c'` the least `k` with `m^k ⊆ I_1`.
pub fn compute_c(i: &GradedFamily, js: &[GradedFamily]) -> Result<u32> {
    if !i.is_m_primary() {
        return Err(Error::InvalidArgument("the family I must be m-primary".into()));
    }
    let beta = js.iter().map(|j| j.linear_gen_bound()).max().unwrap_or(0);
    let c_prime = i.ideal_at(1).smallest_mpower_inside()?;
    Ok((beta + 1).max(c_prime))
}

/// A semigroup `Γ_{n_0, n}` or `Γ̂_{n_0, n}`.
#[derive(Debug, Clone)]
pub struct GammaSpec {
    variant: Variant,
    i: GradedFamily,
    js: Vec<GradedFamily>,
    n0: u32,
    n: Vec<u32>,
    c: u32,
}

impl GammaSpec {
    pub fn new(
        variant: Variant,
        i: GradedFamily,
        js: Vec<GradedFamily>,
        n0: u32,
        n: Vec<u32>,
        c: u32,
    ) -> Result<Self> {
        if !i.is_m_primary() {
            return Err(Error::InvalidArgument("the family I must be m-primary".into()));
        }
        if n.len() != js.len() {
            return Err(Error::WrongBodyCount {
                expected: js.len(),
                found: n.len(),
            });
        }
        if let Some(j) = js.iter().find(|j| j.num_vars() != i.num_vars()) {
            return Err(Error::VariableCountMismatch {
                expected: i.num_vars(),
                found: j.num_vars(),
            });
        }
        if let Some(j) = js.iter().find(|j| j.linear_gen_bound() >= c) {
            return Err(Error::InvalidArgument(format!(
                "c = {c} must exceed the generator bound {} of {j}",
                j.linear_gen_bound()
            )));
        }
        let c_prime = i.ideal_at(1).smallest_mpower_inside()?;
        if c < c_prime {
            return Err(Error::InvalidArgument(format!(
                "c = {c} is below {c_prime}, the least power of m inside I_1"
            )));
        }
        Ok(GammaSpec {
            variant,
            i,
            js,
            n0,
            n,
            c,
        })
    }

    /// The same data with `c` from [`compute_c`].
    pub fn with_default_c(
        variant: Variant,
        i: GradedFamily,
        js: Vec<GradedFamily>,
        n0: u32,
        n: Vec<u32>,
    ) -> Result<Self> {
        let c = compute_c(&i, &js)?;
        Self::new(variant, i, js, n0, n, c)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn with_variant(&self, variant: Variant) -> GammaSpec {
        GammaSpec {
            variant,
            ..self.clone()
        }
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn num_vars(&self) -> usize {
        self.i.num_vars()
    }

    /// `c m (n_0 + |n|)`.
    pub fn level_bound(&self, m: u32) -> u32 {
        self.c * m * (self.n0 + self.n.iter().sum::<u32>())
    }

    /// `J_{mn}`, or `I_{m n_0} J_{mn}` for the hat variant.
    pub fn level_ideal(&self, m: u32) -> MonomialIdeal {
        let scaled: Vec<u32> = self.n.iter().map(|&k| k * m).collect();
        let j = plain_ideal(&self.i, &self.js, &scaled);
        match self.variant {
            Variant::Plain => j,
            Variant::Hat => self.i.ideal_at(m * self.n0).product(&j).expect("same ring"),
        }
    }
}

fn plain_ideal(i: &GradedFamily, js: &[GradedFamily], n: &[u32]) -> MonomialIdeal {
    if js.is_empty() {
        MonomialIdeal::unit(i.num_vars())
    } else {
        family_product_ideal(js, n).expect("validated families")
    }
}

/// `#[Γ]_m`.
pub fn level_count(spec: &GammaSpec, m: u32) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("level must be positive".into()));
    }
    Ok(Staircase::new(&spec.level_ideal(m), spec.level_bound(m)).count_members())
}

/// `dim_k J_{mn} / I_{m n_0} J_{mn}`, counted below `c m (n_0 + |n|)`.
pub fn quotient_level_dim(
    i: &GradedFamily,
    js: &[GradedFamily],
    n0: u32,
    n: &[u32],
    c: u32,
    m: u32,
) -> Result<u64> {
    if n.len() != js.len() {
        return Err(Error::WrongBodyCount {
            expected: js.len(),
            found: n.len(),
        });
    }
    let scaled: Vec<u32> = n.iter().map(|&k| k * m).collect();
    let j = plain_ideal(i, js, &scaled);
    let ij = i.ideal_at(m * n0).product(&j)?;
    let bound = c * m * (n0 + n.iter().sum::<u32>());
    Ok(monomial::count_between(&j, &ij, bound))
}

/// Normalized level counts `#[Γ]_m / m^d` along a schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OkounkovEstimate {
    pub levels: Vec<u32>,
    pub counts: Vec<u64>,
    pub normalized: Vec<Rational>,
    /// The normalized count at the last level.
    pub last: Rational,
    /// `(m_2 v_2 - m_1 v_1) / (m_2 - m_1)` from the last two levels, which
    /// removes a `1/m` error term.
    pub extrapolated: Rational,
    /// Whether the last three normalized values fail to be monotone.
    pub non_monotone_tail: bool,
}

fn normalized(count: u64, m: u32, d: usize) -> Rational {
    Rational::from_integer(count.into()) / rational::pow_int(m as u64, d as u32)
}

fn summarize(levels: Vec<u32>, counts: Vec<u64>, d: usize) -> OkounkovEstimate {
    let values: Vec<Rational> = counts.iter().zip(&levels).map(|(&c, &m)| normalized(c, m, d)).collect();
    let k = values.len();
    let last = values[k - 1].clone();
    let extrapolated = if k >= 2 {
        let (m1, m2) = (levels[k - 2] as i64, levels[k - 1] as i64);
        (rational::int(m2) * &values[k - 1] - rational::int(m1) * &values[k - 2]) / rational::int(m2 - m1)
    } else {
        last.clone()
    };
    let non_monotone_tail = if k >= 3 {
        let a = &values[k - 1] - &values[k - 2];
        let b = &values[k - 2] - &values[k - 3];
        (a > Rational::zero() && b < Rational::zero()) || (a < Rational::zero() && b > Rational::zero())
    } else {
        false
    };
    OkounkovEstimate {
        levels,
        counts,
        normalized: values,
        last,
        extrapolated,
        non_monotone_tail,
    }
}

pub fn estimate_okounkov_volume(spec: &GammaSpec, schedule: &[u32]) -> Result<OkounkovEstimate> {
    check_schedule(schedule)?;
    let counts = schedule.iter().map(|&m| level_count(spec, m)).collect::<Result<Vec<_>>>()?;
    Ok(summarize(schedule.to_vec(), counts, spec.num_vars()))
}

/// One row of the plain/hat level count series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCountRow {
    pub m: u32,
    pub count_plain: u64,
    pub count_hat: u64,
    /// `(#[Γ]_m - #[Γ̂]_m) / m^d`.
    pub normalized_diff: Rational,
}

pub fn level_count_series(spec: &GammaSpec, schedule: &[u32]) -> Result<Vec<LevelCountRow>> {
    check_schedule(schedule)?;
    let plain = spec.with_variant(Variant::Plain);
    let hat = spec.with_variant(Variant::Hat);
    schedule
        .iter()
        .map(|&m| {
            let count_plain = level_count(&plain, m)?;
            let count_hat = level_count(&hat, m)?;
            let diff = count_plain.checked_sub(count_hat).ok_or_else(|| {
                Error::Internal(format!("hat level {m} has more points than the plain level"))
            })?;
            Ok(LevelCountRow {
                m,
                count_plain,
                count_hat,
                normalized_diff: normalized(diff, m, spec.num_vars()),
            })
        })
        .collect()
}

/// `dim_k(J_{mn} / I_{m n_0} J_{mn}) / m^d` along the schedule.
pub fn f_estimate(
    i: &GradedFamily,
    js: &[GradedFamily],
    n0: u32,
    n: &[u32],
    schedule: &[u32],
) -> Result<Vec<(u32, Rational)>> {
    check_schedule(schedule)?;
    let c = compute_c(i, js)?;
    schedule
        .iter()
        .map(|&m| {
            let q = quotient_level_dim(i, js, n0, n, c, m)?;
            Ok((m, normalized(q, m, i.num_vars())))
        })
        .collect()
}

/// A point on which a level and the sum of its factors disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionWitness {
    pub m: u32,
    pub variant: Variant,
    pub point: ExponentVector,
    /// Whether the point lies in the level (and so is missing from the sum).
    pub in_level: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    /// `(m, plain holds, hat holds)` for every checked level.
    pub levels: Vec<(u32, bool, bool)>,
    pub witness: Option<DecompositionWitness>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

fn sumset(a: &HashSet<Vec<u32>>, b: &[ExponentVector]) -> HashSet<Vec<u32>> {
    let mut out = HashSet::with_capacity(a.len() * b.len().min(64));
    for x in a {
        for y in b {
            out.insert(x.iter().zip(y.exponents()).map(|(p, q)| p + q).collect());
        }
    }
    out
}

/// Checks, level by level, that the semigroup at `(n_0, n)` is the
/// levelwise sum of the semigroups at `(n_0, 0)` and `(0, n_i e_i)`.
///
/// With `c` from [`compute_c`].
pub fn levelwise_decomposition_check(
    i: &GradedFamily,
    js: &[GradedFamily],
    n0: u32,
    n: &[u32],
    m_max: u32,
) -> Result<DecompositionReport> {
    let spec = GammaSpec::with_default_c(Variant::Plain, i.clone(), js.to_vec(), n0, n.to_vec())?;
    let c = spec.c();
    let d = spec.num_vars();
    let unit = MonomialIdeal::unit(d);
    let mut levels = Vec::new();
    let mut witness = None;
    for m in 1..=m_max {
        let mut flags = [true, true];
        for (slot, variant) in [Variant::Plain, Variant::Hat].into_iter().enumerate() {
            let first = match variant {
                Variant::Plain => unit.members_up_to(c * m * n0),
                Variant::Hat => i.ideal_at(m * n0).members_up_to(c * m * n0),
            };
            let mut acc: HashSet<Vec<u32>> = first.iter().map(|e| e.exponents().to_vec()).collect();
            for (j, &k) in js.iter().zip(n) {
                let factor = j.ideal_at(m * k).members_up_to(c * m * k);
                acc = sumset(&acc, &factor);
            }
            let target: HashSet<Vec<u32>> = spec
                .with_variant(variant)
                .level_ideal(m)
                .members_up_to(spec.level_bound(m))
                .into_iter()
                .map(|e| e.exponents().to_vec())
                .collect();
            if acc != target {
                flags[slot] = false;
                if witness.is_none() {
                    let mut diff: Vec<(Vec<u32>, bool)> = target
                        .difference(&acc)
                        .map(|p| (p.clone(), true))
                        .chain(acc.difference(&target).map(|p| (p.clone(), false)))
                        .collect();
                    diff.sort();
                    let (point, in_level) = diff.swap_remove(0);
                    witness = Some(DecompositionWitness {
                        m,
                        variant,
                        point: ExponentVector::new(point),
                        in_level,
                    });
                }
            }
        }
        levels.push((m, flags[0], flags[1]));
    }
    Ok(DecompositionReport { levels, witness })
}
