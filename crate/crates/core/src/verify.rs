//! Mixed volumes of bodies against mixed multiplicities of their families.
//!
//! Bodies `K_1, ..., K_r` in `R^d_{>=0}` are joined by the standard simplex
//! `K_0`. Each `K_i` defines a graded family in `d + 1` variables through
//! its homogenization, and the simplex gives the powers of the maximal
//! ideal. The geometric table `MV_d(K_0^{d_0}, K_1^{d_1}, ...)` is compared
//! with two normalized algebraic sequences:
//!
//! * `e_(d_0, d)(m | J(1)_p, ...) / p^{|d|}`,
//! * `e_(d_0, d)(m^p | J(1)_p, ...) / p^{d + 1}`.
//!
//! For lattice bodies both equal the geometric value at every `p`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{homogenize, GradedFamily};
use crate::geometry::{volume_polynomial, RationalPolytope};
use crate::io::{PolytopeJson, RationalJson};
use crate::monomial::MonomialIdeal;
use crate::multiplicity::{
    check_schedule, index_set, mixed_multiplicities_ideals, normalize_by_dvec, MixedMultiplicityTable,
    MultiIndex, MultiplicityConfig,
};
use crate::rational::{self, Rational};

pub const DEFAULT_SCHEDULE: [u32; 5] = [1, 2, 4, 8, 16];

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub schedule: Vec<u32>,
    /// Relative tolerance at the last `p` for non-lattice bodies.
    pub tolerance: Rational,
    pub config: MultiplicityConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            schedule: DEFAULT_SCHEDULE.to_vec(),
            tolerance: rational::frac(1, 20),
            config: MultiplicityConfig::default(),
        }
    }
}

/// Normalized algebraic tables at one `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationStep {
    pub p: u32,
    /// `e(m | J_p) / p^{|d|}`.
    pub via_maximal: MixedMultiplicityTable,
    /// `e(m^p | J_p) / p^{d + 1}`.
    pub via_maximal_power: MixedMultiplicityTable,
    pub max_abs_deviation: RationalJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDeviation {
    pub d0: u32,
    pub dvec: Vec<u32>,
    pub geometric: RationalJson,
    pub algebraic: RationalJson,
    pub abs_deviation: RationalJson,
    /// `None` when the geometric value is zero.
    pub rel_deviation: Option<RationalJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub bodies: Vec<PolytopeJson>,
    pub dim: usize,
    pub r: usize,
    pub lattice: bool,
    pub schedule: Vec<u32>,
    pub tolerance: RationalJson,
    /// `MV_d(K_(d_0, d))`, indexed like the multiplicity tables.
    pub geometric: MixedMultiplicityTable,
    pub steps: Vec<VerificationStep>,
    /// Deviations at the last scheduled `p`.
    pub final_deviations: Vec<EntryDeviation>,
    /// Whether the maximal absolute deviation never increases along the
    /// schedule.
    pub monotone_trend: bool,
    pub passed: bool,
}

fn max_abs_deviation(a: &MixedMultiplicityTable, b: &MixedMultiplicityTable) -> Rational {
    a.entries()
        .iter()
        .map(|(k, v)| rational::abs(&(v - &b.entries()[k])))
        .max()
        .unwrap_or_else(Rational::zero)
}

/// `MV_d(K_0^{d_0}, K_1^{d_1}, ...)` for every `d_0 + |d| = d`.
pub fn geometric_table(bodies: &[RationalPolytope]) -> Result<MixedMultiplicityTable> {
    let first = bodies.first().ok_or(Error::EmptyInput("body list"))?;
    let d = first.dim();
    let mut all = vec![RationalPolytope::standard_simplex(d)];
    all.extend(bodies.iter().cloned());
    let poly = volume_polynomial(&all)?;
    let mut entries = BTreeMap::new();
    for idx in index_set(d + 1, bodies.len()) {
        let mut e = vec![idx.d0];
        e.extend(&idx.dvec);
        entries.insert(idx, poly.mixed_volume(&e)?);
    }
    MixedMultiplicityTable::from_entries(d + 1, bodies.len(), entries)
}

fn level(family: &GradedFamily, p: u32) -> Result<MonomialIdeal> {
    let j = family.ideal_at(p);
    if j.is_zero() {
        return Err(Error::EmptyLevel { p });
    }
    Ok((*j).clone())
}

pub fn verify_theorem(bodies: &[RationalPolytope], options: &VerifyOptions) -> Result<VerificationReport> {
    check_schedule(&options.schedule)?;
    if options.tolerance.is_negative() {
        return Err(Error::InvalidArgument("tolerance must be non-negative".into()));
    }
    let geometric = geometric_table(bodies)?;
    let d = bodies[0].dim();
    let families: Vec<GradedFamily> = bodies
        .iter()
        .map(|k| Ok(GradedFamily::body(&homogenize(k, None)?)))
        .collect::<Result<_>>()?;
    let lattice = bodies.iter().all(|k| k.is_lattice());

    let mut steps = Vec::with_capacity(options.schedule.len());
    for &p in &options.schedule {
        let js: Vec<MonomialIdeal> = families.iter().map(|f| level(f, p)).collect::<Result<_>>()?;
        let maximal = mixed_multiplicities_ideals(&MonomialIdeal::maximal(d + 1), &js, &options.config)?;
        let via_maximal = normalize_by_dvec(&maximal, p);
        let power = mixed_multiplicities_ideals(&MonomialIdeal::maximal_power(d + 1, p), &js, &options.config)?;
        let via_maximal_power = power.divided_by(&rational::pow_int(p as u64, d as u32 + 1));
        let dev = max_abs_deviation(&via_maximal, &geometric).max(max_abs_deviation(&via_maximal_power, &geometric));
        steps.push(VerificationStep {
            p,
            via_maximal,
            via_maximal_power,
            max_abs_deviation: RationalJson(dev),
        });
    }

    let last = steps.last().expect("non-empty schedule");
    let final_deviations: Vec<EntryDeviation> = geometric
        .entries()
        .iter()
        .map(|(k, geo): (&MultiIndex, &Rational)| {
            let alg = &last.via_maximal.entries()[k];
            let abs = rational::abs(&(alg - geo));
            let rel = (!geo.is_zero()).then(|| RationalJson(&abs / geo));
            EntryDeviation {
                d0: k.d0,
                dvec: k.dvec.clone(),
                geometric: RationalJson(geo.clone()),
                algebraic: RationalJson(alg.clone()),
                abs_deviation: RationalJson(abs),
                rel_deviation: rel,
            }
        })
        .collect();
    let monotone_trend = steps
        .windows(2)
        .all(|w| w[1].max_abs_deviation.0 <= w[0].max_abs_deviation.0);
    let routes_agree = steps.iter().all(|s| s.via_maximal == s.via_maximal_power);
    let passed = routes_agree
        && if lattice {
            steps.iter().all(|s| s.max_abs_deviation.0.is_zero())
        } else {
            let tol_ok = |t: &MixedMultiplicityTable| {
                t.entries()
                    .iter()
                    .all(|(k, v)| rational::abs(&(v - &geometric.entries()[k])) <= &options.tolerance * &geometric.entries()[k])
            };
            tol_ok(&last.via_maximal) && tol_ok(&last.via_maximal_power)
        };
    Ok(VerificationReport {
        bodies: bodies.iter().map(PolytopeJson::from_polytope).collect(),
        dim: d,
        r: bodies.len(),
        lattice,
        schedule: options.schedule.clone(),
        tolerance: RationalJson(options.tolerance.clone()),
        geometric,
        final_deviations,
        monotone_trend,
        passed,
        steps,
    })
}
