//! Graded families of monomial ideals `n ↦ I_n` with `I_0 = R` and
//! `I_i I_j ⊆ I_{i+j}`.
//!
//! Families are evaluated lazily and memoized per level. Three constructors
//! cover the families used throughout the crate: powers of a fixed ideal,
//! Noetherian truncations of another family, and families attached to a
//! convex body through its homogenization. Arbitrary families can be
//! supplied as callbacks; their graded structure is then only spot-checked.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{RationalPolytope, RationalVector};
use crate::io::{IdealJson, PolytopeJson};
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::rational::Rational;

/// A polytope `K ⊂ R^d_{>=0}` together with a degree of homogenization
/// `h >= max |v|`; its family lives in `d + 1` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogenizedBody {
    base: RationalPolytope,
    h: u32,
}

impl HomogenizedBody {
    pub fn base(&self) -> &RationalPolytope {
        &self.base
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn num_vars(&self) -> usize {
        self.base.dim() + 1
    }

    /// `K̃ = (K × R) ∩ {|x| = h}`, the hull of the lifts `(v, h - |v|)`.
    pub fn lift(&self) -> RationalPolytope {
        let h = Rational::from_integer(self.h.into());
        let pts: Vec<RationalVector> = self
            .base
            .vertices()
            .iter()
            .map(|v| {
                let mut c = v.coords().to_vec();
                c.push(&h - v.coordinate_sum());
                RationalVector::new(c)
            })
            .collect();
        RationalPolytope::convex_hull(&pts).expect("non-empty vertex list")
    }

    /// Level `n` generators: all `m` with `|m| = n h` and `π_1(m) / n ∈ K`.
    fn level(&self, n: u32) -> MonomialIdeal {
        let d = self.base.dim();
        if n == 0 {
            return MonomialIdeal::unit(d + 1);
        }
        let total = n * self.h;
        // Bounding box of n K in each coordinate.
        let caps: Vec<u32> = (0..d)
            .map(|i| {
                let max = self
                    .base
                    .vertices()
                    .iter()
                    .map(|v| v.coords()[i].clone())
                    .max()
                    .expect("non-empty");
                let scaled = max * Rational::from_integer(n.into());
                scaled.floor().to_integer().to_u32().unwrap_or(u32::MAX).min(total)
            })
            .collect();
        let mut gens = Vec::new();
        let mut cur = vec![0u32; d];
        self.collect_level(&caps, total, n, 0, 0, &mut cur, &mut gens);
        MonomialIdeal::from_minimal(d + 1, gens)
    }

    #[allow(clippy::too_many_arguments)]
    fn collect_level(
        &self,
        caps: &[u32],
        total: u32,
        n: u32,
        pos: usize,
        used: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<ExponentVector>,
    ) {
        if pos == cur.len() {
            if self.base.contains_scaled(cur, n as u64) {
                let mut e = cur.clone();
                e.push(total - used);
                out.push(ExponentVector::new(e));
            }
            return;
        }
        for x in 0..=caps[pos].min(total - used) {
            cur[pos] = x;
            self.collect_level(caps, total, n, pos + 1, used + x, cur, out);
        }
        cur[pos] = 0;
    }

    /// Whether every level is m-primary: `0 ∈ K` and `h e_k ∈ K` for all `k`.
    fn levels_m_primary(&self) -> bool {
        let d = self.base.dim();
        let mut probe = vec![0u32; d];
        if !self.base.contains_scaled(&probe, 1) {
            return false;
        }
        (0..d).all(|k| {
            probe.iter_mut().for_each(|x| *x = 0);
            probe[k] = self.h;
            self.base.contains_scaled(&probe, 1)
        })
    }
}

/// Homogenizes `K ⊂ R^d_{>=0}`. Without an explicit degree the least valid
/// positive integer `max(1, ⌈max |v|⌉)` is used.
pub fn homogenize(k: &RationalPolytope, h: Option<u32>) -> Result<HomogenizedBody> {
    if let Some(v) = k
        .vertices()
        .iter()
        .find(|v| v.coords().iter().any(Signed::is_negative))
    {
        return Err(Error::NegativeCoordinate {
            vertex: v.to_string(),
        });
    }
    let needed = k
        .vertices()
        .iter()
        .map(RationalVector::coordinate_sum)
        .max()
        .expect("polytopes have vertices");
    let minimal = needed.ceil().to_integer().to_u32().ok_or_else(|| {
        Error::InvalidArgument(format!("coordinate sum {needed} too large to homogenize"))
    })?;
    let h = match h {
        None => minimal.max(1),
        Some(0) => return Err(Error::InvalidArgument("degree of homogenization must be positive".into())),
        Some(h) if h < minimal => {
            return Err(Error::HomogenizationTooSmall {
                h,
                needed: needed.to_string(),
            })
        }
        Some(h) => h,
    };
    Ok(HomogenizedBody {
        base: k.clone(),
        h,
    })
}

type Callback = Arc<dyn Fn(u32) -> MonomialIdeal + Send + Sync>;

enum Kind {
    Power(MonomialIdeal),
    Body(HomogenizedBody),
    Truncated { source: GradedFamily, a: u32 },
    Custom(Callback),
}

struct Inner {
    num_vars: usize,
    kind: Kind,
    beta: u32,
    mprimary: bool,
    cache: Mutex<HashMap<u32, Arc<MonomialIdeal>>>,
}

/// A lazily evaluated, memoized graded family. Cloning is cheap and clones
/// share the memo table.
#[derive(Clone)]
pub struct GradedFamily {
    inner: Arc<Inner>,
}

impl fmt::Debug for GradedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedFamily({self})")
    }
}

impl fmt::Display for GradedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.kind {
            Kind::Power(a) => write!(f, "powers of {a}"),
            Kind::Body(b) => write!(f, "body family (h = {}, {} vertices)", b.h, b.base.vertices().len()),
            Kind::Truncated { source, a } => write!(f, "truncation at {a} of {source}"),
            Kind::Custom(_) => write!(f, "custom family in {} variables", self.inner.num_vars),
        }
    }
}

impl GradedFamily {
    fn from_kind(num_vars: usize, kind: Kind, beta: u32, mprimary: bool) -> Self {
        GradedFamily {
            inner: Arc::new(Inner {
                num_vars,
                kind,
                beta,
                mprimary,
                cache: Mutex::new(HashMap::new()),
            }),
        }
    }

    /// `n ↦ A^n`.
    pub fn power(a: &MonomialIdeal) -> Self {
        let beta = a.max_gen_degree().unwrap_or(0);
        Self::from_kind(a.num_vars(), Kind::Power(a.clone()), beta, a.is_m_primary())
    }

    /// The family of powers of the maximal ideal.
    pub fn maximal(num_vars: usize) -> Self {
        Self::power(&MonomialIdeal::maximal(num_vars))
    }

    /// The Noetherian family generated by the first `a` levels of `source`.
    pub fn truncated(source: &GradedFamily, a: u32) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidArgument("truncation level must be positive".into()));
        }
        Ok(Self::from_kind(
            source.num_vars(),
            Kind::Truncated {
                source: source.clone(),
                a,
            },
            source.linear_gen_bound(),
            source.is_m_primary(),
        ))
    }

    pub fn body(hb: &HomogenizedBody) -> Self {
        Self::from_kind(hb.num_vars(), Kind::Body(hb.clone()), hb.h, hb.levels_m_primary())
    }

    /// A family given by an arbitrary callback. The caller vouches for the
    /// graded-family law, the linear generator bound `beta` and the
    /// m-primary flag; see [`GradedFamily::spot_check`]. Level 0 is always
    /// the unit ideal regardless of the callback.
    pub fn custom<F>(num_vars: usize, beta: u32, mprimary: bool, f: F) -> Self
    where
        F: Fn(u32) -> MonomialIdeal + Send + Sync + 'static,
    {
        Self::from_kind(num_vars, Kind::Custom(Arc::new(f)), beta, mprimary)
    }

    pub fn num_vars(&self) -> usize {
        self.inner.num_vars
    }

    /// `β` with `max_gen_degree(I_n) <= β n` for all `n >= 1`.
    pub fn linear_gen_bound(&self) -> u32 {
        self.inner.beta
    }

    /// Whether every `I_n` with `n >= 1` is m-primary.
    pub fn is_m_primary(&self) -> bool {
        self.inner.mprimary
    }

    pub fn homogenized_body(&self) -> Option<&HomogenizedBody> {
        match &self.inner.kind {
            Kind::Body(b) => Some(b),
            _ => None,
        }
    }

    pub fn ideal_at(&self, n: u32) -> Arc<MonomialIdeal> {
        if n == 0 {
            return Arc::new(MonomialIdeal::unit(self.num_vars()));
        }
        if let Some(hit) = self.inner.cache.lock().expect("memo lock").get(&n) {
            return hit.clone();
        }
        // Computed outside the lock; a racing thread may duplicate work but
        // both arrive at the same ideal.
        let value = Arc::new(self.compute(n));
        self.inner
            .cache
            .lock()
            .expect("memo lock")
            .entry(n)
            .or_insert(value)
            .clone()
    }

    fn compute(&self, n: u32) -> MonomialIdeal {
        match &self.inner.kind {
            Kind::Power(a) => a.power(n),
            Kind::Body(b) => b.level(n),
            Kind::Custom(f) => f(n),
            Kind::Truncated { source, a } => {
                if n <= *a {
                    return (*source.ideal_at(n)).clone();
                }
                let mut acc = MonomialIdeal::zero(self.num_vars());
                for i in 1..=n / 2 {
                    let term = self
                        .ideal_at(i)
                        .product(&self.ideal_at(n - i))
                        .expect("same ring");
                    acc = acc.sum(&term).expect("same ring");
                }
                acc
            }
        }
    }

    /// Checks `I_i I_j ⊆ I_{i+j}` for `i + j <= n_max`, the generator bound
    /// and the m-primary flag on levels up to `n_max`.
    pub fn spot_check(&self, n_max: u32) -> Result<()> {
        for n in 1..=n_max {
            let level = self.ideal_at(n);
            if level.num_vars() != self.num_vars() {
                return Err(Error::VariableCountMismatch {
                    expected: self.num_vars(),
                    found: level.num_vars(),
                });
            }
            if let Ok(beta) = level.max_gen_degree() {
                if beta > self.linear_gen_bound() * n {
                    return Err(Error::InvalidArgument(format!(
                        "level {n} has a generator of degree {beta} above the bound {}",
                        self.linear_gen_bound() * n
                    )));
                }
            }
            if self.is_m_primary() {
                level.check_m_primary()?;
            }
            for i in 1..n {
                let prod = self.ideal_at(i).product(&self.ideal_at(n - i))?;
                if !prod.is_subset_of(&level)? {
                    return Err(Error::InvalidArgument(format!(
                        "levels {i} and {} multiply outside level {n}",
                        n - i
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn power_family(a: &MonomialIdeal) -> GradedFamily {
    GradedFamily::power(a)
}

pub fn truncated_family(source: &GradedFamily, a: u32) -> Result<GradedFamily> {
    GradedFamily::truncated(source, a)
}

pub fn body_family(hb: &HomogenizedBody) -> GradedFamily {
    GradedFamily::body(hb)
}

/// `K(p) = π_1(conv{m : x^m a generator of J_p})`, a lattice polytope with
/// `K(p) / p ⊆ K`.
pub fn approximation_polytope(hb: &HomogenizedBody, p: u32) -> Result<RationalPolytope> {
    if p == 0 {
        return Err(Error::InvalidArgument("approximation level must be positive".into()));
    }
    let level = hb.level(p);
    if level.is_zero() {
        return Err(Error::EmptyLevel { p });
    }
    let d = hb.base.dim();
    let pts: Vec<RationalVector> = level
        .generators()
        .iter()
        .map(|g| {
            RationalVector::new(
                g.exponents()[..d]
                    .iter()
                    .map(|&x| Rational::from_integer(x.into()))
                    .collect(),
            )
        })
        .collect();
    RationalPolytope::convex_hull(&pts)
}

/// `J(1)_{n_1} ⋯ J(r)_{n_r}`.
pub fn family_product_ideal(families: &[GradedFamily], n: &[u32]) -> Result<MonomialIdeal> {
    if families.len() != n.len() {
        return Err(Error::WrongBodyCount {
            expected: families.len(),
            found: n.len(),
        });
    }
    let num_vars = match families.first() {
        Some(f) => f.num_vars(),
        None => {
            return Err(Error::EmptyInput(
                "family list (the number of variables is unknown)",
            ))
        }
    };
    if let Some(f) = families.iter().find(|f| f.num_vars() != num_vars) {
        return Err(Error::VariableCountMismatch {
            expected: num_vars,
            found: f.num_vars(),
        });
    }
    let mut acc = MonomialIdeal::unit(num_vars);
    for (f, &k) in families.iter().zip(n) {
        if k > 0 {
            acc = acc.product(&f.ideal_at(k))?;
        }
    }
    Ok(acc)
}

/// JSON description of a family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FamilySpec {
    Power {
        ideal: IdealJson,
    },
    Body {
        polytope: PolytopeJson,
        #[serde(default)]
        h: Option<u32>,
    },
    Truncated {
        source: Box<FamilySpec>,
        a: u32,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<GradedFamily> {
        match self {
            FamilySpec::Power { ideal } => Ok(GradedFamily::power(&ideal.to_ideal()?)),
            FamilySpec::Body { polytope, h } => {
                let k = polytope.to_polytope()?;
                Ok(GradedFamily::body(&homogenize(&k, *h)?))
            }
            FamilySpec::Truncated { source, a } => GradedFamily::truncated(&source.build()?, *a),
        }
    }
}
