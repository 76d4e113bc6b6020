//! Mixed multiplicities of monomial ideals and of graded families.
//!
//! For an m-primary `I` and ideals `J_1, ..., J_r` in `d` variables the
//! multigraded Hilbert function
//!
//! ```text
//! H(n_0, n) = dim_k I^{n_0} J^n / I^{n_0 + 1} J^n
//! ```
//!
//! agrees for large arguments with a polynomial of total degree `d - 1`
//! whose top part, written in the binomial basis
//! `C(n_0 + d_0, d_0) C(n_1 + d_1, d_1) ⋯`, has the mixed multiplicities
//! `e_(d_0, d)` as coefficients. The iterated forward difference of order
//! `(d_0, d)` extracts each one exactly, in integers.
//!
//! Family invariants are normalized limits of these numbers.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::GradedFamily;
use crate::geometry::{volume_polynomial, RationalPolytope, RationalVector};
use crate::io::TableJson;
use crate::monomial::{self, MonomialIdeal};
use crate::okounkov;
use crate::par;
use crate::polyfit;
use crate::rational::{self, Rational};

/// Environment variable overriding the stabilization cap.
pub const MAX_BASE_ENV: &str = "MIXEDVOL_MAX_BASE";

const DEFAULT_MAX_BASE: u32 = 64;

/// Index `(d_0, d_1, ..., d_r)` of a mixed multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    pub d0: u32,
    pub dvec: Vec<u32>,
}

impl MultiIndex {
    pub fn new(d0: u32, dvec: Vec<u32>) -> Self {
        MultiIndex { d0, dvec }
    }

    fn from_flat(flat: &[u32]) -> Self {
        MultiIndex {
            d0: flat[0],
            dvec: flat[1..].to_vec(),
        }
    }

    fn flat(&self) -> Vec<u32> {
        let mut v = vec![self.d0];
        v.extend(&self.dvec);
        v
    }

    pub fn total(&self) -> u32 {
        self.d0 + self.dvec.iter().sum::<u32>()
    }
}

/// All indices `(d_0, d)` with `d_0 + |d| = d - 1` for a ring in `d`
/// variables.
pub fn index_set(num_vars: usize, r: usize) -> Vec<MultiIndex> {
    polyfit::compositions(r + 1, num_vars as u32 - 1)
        .iter()
        .map(|f| MultiIndex::from_flat(f))
        .collect()
}

/// Exact mixed multiplicities (or mixed volumes) indexed by `(d_0, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct MixedMultiplicityTable {
    dim: usize,
    r: usize,
    entries: BTreeMap<MultiIndex, Rational>,
}

impl MixedMultiplicityTable {
    /// Checks that the indices are exactly the index set of a ring in `dim`
    /// variables with `r` ideals, and that every value is non-negative.
    pub fn from_entries(dim: usize, r: usize, entries: BTreeMap<MultiIndex, Rational>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("table dimension must be positive".into()));
        }
        let expected: Vec<MultiIndex> = index_set(dim, r);
        let keys: Vec<&MultiIndex> = entries.keys().collect();
        if keys.len() != expected.len() || keys.iter().zip(&expected).any(|(a, b)| *a != b) {
            return Err(Error::InvalidArgument(format!(
                "table indices must be exactly the {} tuples (d0, d1..d{r}) summing to {}",
                expected.len(),
                dim - 1
            )));
        }
        if let Some((k, v)) = entries.iter().find(|(_, v)| v.is_negative()) {
            return Err(Error::InvalidArgument(format!(
                "negative entry {v} at index ({}, {:?})",
                k.d0, k.dvec
            )));
        }
        Ok(MixedMultiplicityTable { dim, r, entries })
    }

    /// Number of variables of the ring (the indices sum to `dim - 1`).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn entries(&self) -> &BTreeMap<MultiIndex, Rational> {
        &self.entries
    }

    pub fn get(&self, d0: u32, dvec: &[u32]) -> Option<&Rational> {
        self.entries.get(&MultiIndex::new(d0, dvec.to_vec()))
    }

    /// Divides every entry by `s > 0`.
    pub fn divided_by(&self, s: &Rational) -> MixedMultiplicityTable {
        MixedMultiplicityTable {
            dim: self.dim,
            r: self.r,
            entries: self.entries.iter().map(|(k, v)| (k.clone(), v / s)).collect(),
        }
    }

    fn map_values(&self, f: impl Fn(&MultiIndex, &Rational) -> Rational) -> MixedMultiplicityTable {
        MixedMultiplicityTable {
            dim: self.dim,
            r: self.r,
            entries: self.entries.iter().map(|(k, v)| (k.clone(), f(k, v))).collect(),
        }
    }

    pub fn all_integral(&self) -> bool {
        self.entries.values().all(|v| v.is_integer())
    }
}

/// Limits for the search of a base point past which the Hilbert function is
/// polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicityConfig {
    /// Largest base coordinate tried before giving up.
    pub max_base: u32,
}

impl Default for MultiplicityConfig {
    fn default() -> Self {
        MultiplicityConfig {
            max_base: DEFAULT_MAX_BASE,
        }
    }
}

impl MultiplicityConfig {
    /// The default configuration, with the cap taken from
    /// `MIXEDVOL_MAX_BASE` when that is set to a positive integer.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_BASE_ENV) {
            Ok(raw) => {
                let max_base: u32 = raw.trim().parse().map_err(|_| {
                    Error::InvalidArgument(format!("{MAX_BASE_ENV} must be a positive integer, got {raw:?}"))
                })?;
                if max_base == 0 {
                    return Err(Error::InvalidArgument(format!("{MAX_BASE_ENV} must be positive")));
                }
                Ok(MultiplicityConfig { max_base })
            }
            Err(_) => Ok(Self::default()),
        }
    }
}

fn check_ring(i: &MonomialIdeal, js: &[&MonomialIdeal]) -> Result<()> {
    for j in js {
        if j.num_vars() != i.num_vars() {
            return Err(Error::VariableCountMismatch {
                expected: i.num_vars(),
                found: j.num_vars(),
            });
        }
    }
    Ok(())
}

/// `#(A ∖ I A)` for `A = I^{n_0} J^n`; `c` is `smallest_mpower_inside(I)`.
fn quotient_count(i: &MonomialIdeal, c: u32, a: &MonomialIdeal) -> u64 {
    if a.is_zero() {
        return 0;
    }
    let ia = i.product(a).expect("same ring");
    let bound = a.max_gen_degree().expect("nonzero") + c;
    monomial::count_between(a, &ia, bound)
}

/// `dim_k I^{n_0} J^n / I^{n_0 + 1} J^n`.
pub fn hilbert_t_dim(i: &MonomialIdeal, js: &[MonomialIdeal], n0: u32, n: &[u32]) -> Result<u64> {
    if js.len() != n.len() {
        return Err(Error::WrongBodyCount {
            expected: js.len(),
            found: n.len(),
        });
    }
    check_ring(i, &js.iter().collect::<Vec<_>>())?;
    i.check_m_primary()?;
    let c = i.smallest_mpower_inside()?;
    let mut a = i.power(n0);
    for (j, &k) in js.iter().zip(n) {
        a = a.product(&j.power(k))?;
    }
    Ok(quotient_count(i, c, &a))
}

/// Values of the Hilbert function on a finite set of grid points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSample {
    pub base: Vec<u32>,
    pub values: BTreeMap<Vec<u32>, u64>,
}

/// Evaluates the Hilbert function at every listed point, sharing the powers
/// of each ideal between points.
fn sample_points(i: &MonomialIdeal, js: &[MonomialIdeal], points: &[Vec<u32>]) -> BTreeMap<Vec<u32>, u64> {
    let c = i.smallest_mpower_inside().expect("m-primary");
    let slots: Vec<&MonomialIdeal> = std::iter::once(i).chain(js).collect();
    let mut needed: Vec<(usize, u32)> = points
        .iter()
        .flat_map(|p| p.iter().enumerate().map(|(s, &k)| (s, k)))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    needed.sort_unstable();
    let powers: HashMap<(usize, u32), Arc<MonomialIdeal>> = needed
        .iter()
        .cloned()
        .zip(par::map(&needed, |&(s, k)| Arc::new(slots[s].power(k))))
        .collect();
    let counts = par::map(points, |p| {
        let mut a = MonomialIdeal::unit(i.num_vars());
        for (s, &k) in p.iter().enumerate() {
            if k > 0 {
                a = a.product(&powers[&(s, k)]).expect("same ring");
            }
        }
        quotient_count(i, c, &a)
    });
    points.iter().cloned().zip(counts).collect()
}

/// All `k` in `N^len` with `|k| <= total`.
fn bounded_vectors(len: usize, total: u32) -> Vec<Vec<u32>> {
    (0..=total)
        .flat_map(|t| polyfit::compositions(len, t))
        .collect()
}

fn offset(base: &[u32], k: &[u32]) -> Vec<u32> {
    base.iter().zip(k).map(|(b, x)| b + x).collect()
}

/// `Σ_{k <= δ} (-1)^{|δ| - |k|} Π C(δ_i, k_i) H(base + k)`.
fn forward_difference(values: &BTreeMap<Vec<u32>, u64>, base: &[u32], delta: &[u32]) -> BigInt {
    let mut total = BigInt::zero();
    let mut k = vec![0u32; delta.len()];
    let full: u32 = delta.iter().sum();
    loop {
        let mut coeff = BigInt::from(1);
        for (&di, &ki) in delta.iter().zip(&k) {
            coeff *= rational::binomial(di as u64, ki as u64);
        }
        let h = BigInt::from(values[&offset(base, &k)]);
        if (full - k.iter().sum::<u32>()) % 2 == 0 {
            total += coeff * h;
        } else {
            total -= coeff * h;
        }
        let mut pos = 0;
        loop {
            if pos == k.len() {
                return total;
            }
            if k[pos] < delta[pos] {
                k[pos] += 1;
                break;
            }
            k[pos] = 0;
            pos += 1;
        }
    }
}

/// Samples the Hilbert function around `base` and takes every top-order
/// difference there.
pub fn hilbert_sample(i: &MonomialIdeal, js: &[MonomialIdeal], base: &[u32]) -> Result<HilbertSample> {
    check_ring(i, &js.iter().collect::<Vec<_>>())?;
    i.check_m_primary()?;
    if base.len() != js.len() + 1 {
        return Err(Error::DimensionMismatch {
            expected: js.len() + 1,
            found: base.len(),
        });
    }
    let order = i.num_vars() as u32 - 1;
    let points: Vec<Vec<u32>> = bounded_vectors(base.len(), order)
        .iter()
        .map(|k| offset(base, k))
        .collect();
    Ok(HilbertSample {
        base: base.to_vec(),
        values: sample_points(i, js, &points),
    })
}

fn differences_at(
    sample: &BTreeMap<Vec<u32>, u64>,
    base: &[u32],
    indices: &[MultiIndex],
) -> Vec<BigInt> {
    indices
        .iter()
        .map(|idx| forward_difference(sample, base, &idx.flat()))
        .collect()
}

/// The full table `e_(d_0, d)(I | J_1, ..., J_r)`.
///
/// The differences are taken at the bases `B`, `B + 1` and `B + 2`
/// (componentwise) with `B = (b, ..., b)`, starting from `b = d`; the
/// table is accepted once all three agree and are non-negative, otherwise
/// `b` doubles up to `config.max_base`.
pub fn mixed_multiplicities_ideals(
    i: &MonomialIdeal,
    js: &[MonomialIdeal],
    config: &MultiplicityConfig,
) -> Result<MixedMultiplicityTable> {
    check_ring(i, &js.iter().collect::<Vec<_>>())?;
    i.check_m_primary()?;
    if js.iter().any(|j| j.is_zero()) {
        return Err(Error::ZeroIdeal);
    }
    let d = i.num_vars();
    let r = js.len();
    let indices = index_set(d, r);
    let order = d as u32 - 1;
    let shifts = bounded_vectors(r + 1, order);
    let mut b = (d as u32).min(config.max_base).max(1);
    loop {
        let bases: Vec<Vec<u32>> = (0..3).map(|s| vec![b + s; r + 1]).collect();
        let mut points: Vec<Vec<u32>> = bases
            .iter()
            .flat_map(|base| shifts.iter().map(move |k| offset(base, k)))
            .collect();
        points.sort();
        points.dedup();
        let values = sample_points(i, js, &points);
        let tables: Vec<Vec<BigInt>> = bases
            .iter()
            .map(|base| differences_at(&values, base, &indices))
            .collect();
        let stable = tables[0] == tables[1]
            && tables[1] == tables[2]
            && tables[0].iter().all(|v| !v.is_negative());
        if stable {
            let entries = indices
                .into_iter()
                .zip(tables.into_iter().next().expect("three tables"))
                .map(|(k, v)| (k, Rational::from_integer(v)))
                .collect();
            return MixedMultiplicityTable::from_entries(d, r, entries);
        }
        if b >= config.max_base {
            return Err(Error::NonStabilization {
                cap: config.max_base,
                last_base: vec![b; r + 1],
            });
        }
        b = (b * 2).min(config.max_base);
    }
}

/// Outcome of comparing `e(m^p | J)` with `p^{d_0 + 1} e(m | J)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingCheck {
    pub holds: bool,
    pub scaled: MixedMultiplicityTable,
    pub base: MixedMultiplicityTable,
    /// First index where the identity fails.
    pub witness: Option<MultiIndex>,
}

/// Checks `e_(d_0, d)(m^p | J) = p^{d_0 + 1} e_(d_0, d)(m | J)` entrywise.
pub fn scaling_identity_check(js: &[MonomialIdeal], p: u32, config: &MultiplicityConfig) -> Result<ScalingCheck> {
    if p == 0 {
        return Err(Error::InvalidArgument("scaling exponent must be positive".into()));
    }
    let num_vars = js
        .first()
        .map(|j| j.num_vars())
        .ok_or(Error::EmptyInput("ideal list (the number of variables is unknown)"))?;
    let m = MonomialIdeal::maximal(num_vars);
    let base = mixed_multiplicities_ideals(&m, js, config)?;
    let scaled = mixed_multiplicities_ideals(&MonomialIdeal::maximal_power(num_vars, p), js, config)?;
    let witness = base
        .entries()
        .iter()
        .find(|(k, v)| scaled.entries()[k] != *v * rational::pow_int(p as u64, k.d0 + 1))
        .map(|(k, _)| k.clone());
    Ok(ScalingCheck {
        holds: witness.is_none(),
        scaled,
        base,
        witness,
    })
}

/// One level `p` of a family computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyStep {
    pub p: u32,
    /// `e(I_p | J(1)_p, ..., J(r)_p)`.
    pub raw: MixedMultiplicityTable,
    /// `raw / p^d`.
    pub normalized: MixedMultiplicityTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMultiplicities {
    pub steps: Vec<FamilyStep>,
    /// The normalized table at the last scheduled `p`.
    pub estimate: MixedMultiplicityTable,
    /// Whether the last two normalized tables coincide.
    pub stabilized: bool,
}

pub(crate) fn check_schedule(schedule: &[u32]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::EmptySchedule);
    }
    if schedule[0] == 0 || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSchedule);
    }
    Ok(())
}

fn check_families(i: &GradedFamily, js: &[GradedFamily]) -> Result<()> {
    if !i.is_m_primary() {
        return Err(Error::InvalidArgument("the family I must be m-primary".into()));
    }
    if let Some(j) = js.iter().find(|j| j.num_vars() != i.num_vars()) {
        return Err(Error::VariableCountMismatch {
            expected: i.num_vars(),
            found: j.num_vars(),
        });
    }
    Ok(())
}

fn level_ideals(js: &[GradedFamily], p: u32) -> Result<Vec<MonomialIdeal>> {
    js.iter()
        .map(|j| {
            let level = j.ideal_at(p);
            if level.is_zero() {
                Err(Error::EmptyLevel { p })
            } else {
                Ok((*level).clone())
            }
        })
        .collect()
}

/// `e(I_p | J(1)_p, ..., J(r)_p) / p^d` along the schedule.
pub fn mixed_multiplicities_family(
    i: &GradedFamily,
    js: &[GradedFamily],
    schedule: &[u32],
    config: &MultiplicityConfig,
) -> Result<FamilyMultiplicities> {
    check_schedule(schedule)?;
    check_families(i, js)?;
    let d = i.num_vars() as u32;
    let mut steps = Vec::with_capacity(schedule.len());
    for &p in schedule {
        let ip = i.ideal_at(p);
        let jp = level_ideals(js, p)?;
        let raw = mixed_multiplicities_ideals(&ip, &jp, config)?;
        let normalized = raw.divided_by(&rational::pow_int(p as u64, d));
        steps.push(FamilyStep { p, raw, normalized });
    }
    let n = steps.len();
    let stabilized = n >= 2 && steps[n - 1].normalized == steps[n - 2].normalized;
    Ok(FamilyMultiplicities {
        estimate: steps[n - 1].normalized.clone(),
        stabilized,
        steps,
    })
}

/// Leading coefficient in `m` of the degree-`degree` polynomial `f(m)`.
///
/// Tries windows of `degree + 2` consecutive values starting at
/// `m = 1, 2, 4, ...` up to `max_start`, for functions that only become
/// polynomial eventually.
pub fn leading_coefficient_in_m(
    f: impl Fn(u32) -> Result<u64>,
    degree: u32,
    max_start: u32,
) -> Result<Rational> {
    let mut start = 1;
    loop {
        let samples: Vec<(u32, Rational)> = (start..start + degree + 2)
            .map(|m| Ok((m, Rational::from_integer(f(m)?.into()))))
            .collect::<Result<_>>()?;
        match polyfit::leading_coefficient(&samples, degree) {
            Err(Error::InconsistentFit(_)) if start < max_start => start *= 2,
            other => return other,
        }
    }
}

/// Default largest starting point for [`leading_coefficient_in_m`].
pub const DEFAULT_FIT_START_CAP: u32 = 8;

/// The homogeneous polynomial `F(n_0, n)` and the mixed multiplicities read
/// off its coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPolynomial {
    /// Coefficients keyed by exponent `(a_0, a_1, ..., a_r)`.
    pub coefficients: BTreeMap<Vec<u32>, Rational>,
    /// `e_(d_0, d)` = `(d_0 + 1)! d!` times the coefficient of
    /// `n_0^{d_0 + 1} n^d`.
    pub table: MixedMultiplicityTable,
    /// Coefficients of the monomials free of `n_0` (all zero in theory).
    pub pure_n_coefficients: BTreeMap<Vec<u32>, Rational>,
}

impl FamilyPolynomial {
    pub fn pure_n_terms_vanish(&self) -> bool {
        self.pure_n_coefficients.values().all(|c| c.is_zero())
    }
}

fn factorial_product(e: &[u32]) -> Rational {
    Rational::from_integer(e.iter().map(|&x| rational::factorial(x)).product())
}

fn grid(len: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Fits `F(n_0, n) = lim_m dim(J_{mn} / I_{m n_0} J_{mn}) / m^d` on the grid
/// `{1..grid_max}^{r+1}`.
///
/// Each grid value is the exact leading coefficient in `m`, so the fit only
/// succeeds for families whose colengths are eventually polynomial in `m`
/// (Noetherian families such as powers); otherwise an
/// [`Error::InconsistentFit`] is returned.
pub fn family_polynomial(i: &GradedFamily, js: &[GradedFamily], grid_max: u32) -> Result<FamilyPolynomial> {
    check_families(i, js)?;
    let d = i.num_vars();
    let r = js.len();
    let c = okounkov::compute_c(i, js)?;
    let points = grid(r + 1, grid_max);
    let values = par::try_map(&points, |pt| {
        let v = leading_coefficient_in_m(
            |m| okounkov::quotient_level_dim(i, js, pt[0], &pt[1..], c, m),
            d as u32,
            DEFAULT_FIT_START_CAP,
        )?;
        Ok((pt.clone(), v))
    })?;
    let coefficients = polyfit::fit_homogeneous(&values, r + 1, d as u32)?;
    let mut entries = BTreeMap::new();
    let mut pure = BTreeMap::new();
    for (e, coeff) in &coefficients {
        if e[0] == 0 {
            pure.insert(e.clone(), coeff.clone());
        } else {
            let idx = MultiIndex::new(e[0] - 1, e[1..].to_vec());
            entries.insert(idx, coeff * factorial_product(e));
        }
    }
    if let Some((k, v)) = entries.iter().find(|(_, v)| v.is_negative()) {
        return Err(Error::Internal(format!(
            "fitted mixed multiplicity {v} at ({}, {:?}) is negative",
            k.d0, k.dvec
        )));
    }
    Ok(FamilyPolynomial {
        coefficients,
        table: MixedMultiplicityTable::from_entries(d, r, entries)?,
        pure_n_coefficients: pure,
    })
}

/// Mixed multiplicities `e_d(J(1), ..., J(r))`, `|d| = d`, of m-primary
/// families, indexed by `d`.
pub type PrimaryTable = BTreeMap<Vec<u32>, Rational>;

/// The two estimates of `e_d` for m-primary families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryMultiplicities {
    /// Exact fit of `G(n) = lim dim R / J_{mn} / m^d`, when the colengths are
    /// polynomial in `m`; the error otherwise.
    pub fitted: std::result::Result<PrimaryTable, Error>,
    /// Per scheduled `p`, the same numbers read from normalized mixed
    /// multiplicities with one of the families in the role of `I`.
    pub bridged: Vec<(u32, PrimaryTable)>,
    /// Whether the fit succeeded and equals the last bridged table.
    pub agree: bool,
}

/// `c` for the m-primary setting: at least 2, above every generator bound,
/// and with `m^{c - 1}` inside every `J(i)_1`.
pub fn compute_c_primary(js: &[GradedFamily]) -> Result<u32> {
    let mut c = 2;
    for j in js {
        if !j.is_m_primary() {
            return Err(Error::InvalidArgument("every family must be m-primary".into()));
        }
        c = c
            .max(j.ideal_at(1).smallest_mpower_inside()? + 1)
            .max(j.linear_gen_bound() + 1);
    }
    Ok(c)
}

/// `dim_k R / J_{mn}` through the level count of the semigroup attached to
/// `n` with `I = m`.
fn primary_colength(js: &[GradedFamily], n: &[u32], c: u32, m: u32) -> Result<u64> {
    let d = js[0].num_vars();
    let spec = okounkov::GammaSpec::new(
        okounkov::Variant::Plain,
        GradedFamily::maximal(d),
        js.to_vec(),
        0,
        n.to_vec(),
        c,
    )?;
    let top = c as u64 * m as u64 * n.iter().map(|&x| x as u64).sum::<u64>();
    let simplex = rational::binomial(top + d as u64, d as u64);
    let inside = okounkov::level_count(&spec, m)?;
    let diff = simplex - BigInt::from(inside);
    u64::try_from(diff).map_err(|_| Error::Internal("negative colength".into()))
}

fn bridge_index(dvec: &[u32]) -> Option<(usize, MultiIndex)> {
    let k = dvec.iter().rposition(|&x| x > 0)?;
    Some((k, MultiIndex::new(dvec[k] - 1, dvec[..k].to_vec())))
}

/// Mixed multiplicities of m-primary families, by fitting `G` and through
/// the family tables with `I = J(k)`, `k` the last slot of positive degree.
pub fn m_primary_family_multiplicities(
    js: &[GradedFamily],
    schedule: &[u32],
    grid_max: u32,
    config: &MultiplicityConfig,
) -> Result<PrimaryMultiplicities> {
    check_schedule(schedule)?;
    let first = js.first().ok_or(Error::EmptyInput("family list"))?;
    let d = first.num_vars();
    let r = js.len();
    let c = compute_c_primary(js)?;
    if let Some(j) = js.iter().find(|j| j.num_vars() != d) {
        return Err(Error::VariableCountMismatch {
            expected: d,
            found: j.num_vars(),
        });
    }
    let indices = polyfit::compositions(r, d as u32);

    let fitted = (|| {
        let points = grid(r, grid_max);
        let values = par::try_map(&points, |pt| {
            let v = leading_coefficient_in_m(|m| primary_colength(js, pt, c, m), d as u32, DEFAULT_FIT_START_CAP)?;
            Ok((pt.clone(), v))
        })?;
        let coeffs = polyfit::fit_homogeneous(&values, r, d as u32)?;
        Ok(coeffs
            .into_iter()
            .map(|(e, v)| {
                let scaled = &v * factorial_product(&e);
                (e, scaled)
            })
            .collect::<PrimaryTable>())
    })();

    let mut bridged = Vec::with_capacity(schedule.len());
    let mut per_k: BTreeMap<usize, FamilyMultiplicities> = BTreeMap::new();
    for dvec in &indices {
        let (k, _) = bridge_index(dvec).expect("|d| = d > 0");
        if let std::collections::btree_map::Entry::Vacant(slot) = per_k.entry(k) {
            slot.insert(mixed_multiplicities_family(&js[k], &js[..k], schedule, config)?);
        }
    }
    for (step, &p) in schedule.iter().enumerate() {
        let table: PrimaryTable = indices
            .iter()
            .map(|dvec| {
                let (k, idx) = bridge_index(dvec).expect("|d| = d > 0");
                let v = per_k[&k].steps[step].normalized.entries()[&idx].clone();
                (dvec.clone(), v)
            })
            .collect();
        bridged.push((p, table));
    }
    let agree = match &fitted {
        Ok(t) => bridged.last().map(|(_, b)| b == t).unwrap_or(false),
        Err(_) => false,
    };
    Ok(PrimaryMultiplicities { fitted, bridged, agree })
}

/// `conv(G ∪ {g + (c - |g|) e_k})` for the generators `G` of an m-primary
/// ideal: the Newton region cut at degree `c`, whose complement in `c Δ`
/// has normalized volume `e(J) / d!`.
pub fn newton_slice(j: &MonomialIdeal, c: u32) -> Result<RationalPolytope> {
    j.check_m_primary()?;
    let beta = j.max_gen_degree()?;
    if c < beta {
        return Err(Error::InvalidArgument(format!(
            "cut degree {c} is below the generator degree {beta}"
        )));
    }
    let d = j.num_vars();
    let mut pts = Vec::new();
    for g in j.generators() {
        let e = g.exponents();
        pts.push(RationalVector::new(e.iter().map(|&x| rational::int(x as i64)).collect()));
        for k in 0..d {
            let mut lifted = e.to_vec();
            lifted[k] += c - g.degree();
            pts.push(RationalVector::new(lifted.iter().map(|&x| rational::int(x as i64)).collect()));
        }
    }
    RationalPolytope::convex_hull(&pts)
}

/// `e_d = c^d - MV(Δ_d)` for the power families of m-primary ideals, with
/// `Δ_i` the Newton slices at degree `c`.
pub fn power_family_geometric_multiplicities(ideals: &[MonomialIdeal], c: u32) -> Result<PrimaryTable> {
    let first = ideals.first().ok_or(Error::EmptyInput("ideal list"))?;
    let d = first.num_vars();
    let slices: Vec<RationalPolytope> = ideals.iter().map(|j| newton_slice(j, c)).collect::<Result<_>>()?;
    let poly = volume_polynomial(&slices)?;
    let cd = rational::pow_int(c as u64, d as u32);
    polyfit::compositions(ideals.len(), d as u32)
        .into_iter()
        .map(|e| {
            let mv = poly.mixed_volume(&e)?;
            Ok((e, &cd - mv))
        })
        .collect()
}

/// Normalized family table with `e` scaled by `p^{-|d|}` instead of
/// `p^{-d}`; the two agree for `I_p = m` by the scaling identity.
pub(crate) fn normalize_by_dvec(t: &MixedMultiplicityTable, p: u32) -> MixedMultiplicityTable {
    t.map_values(|k, v| v / rational::pow_int(p as u64, k.dvec.iter().sum()))
}
