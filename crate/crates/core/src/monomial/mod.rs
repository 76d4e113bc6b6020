//! Monomial ideals in `k[x_1, ..., x_d]`, stored by minimal generators.

mod equigen;
mod staircase;

use std::fmt;

use crate::error::{Error, Result};

pub use staircase::{quotient_dim, quotient_dim_exhaustive, Staircase};
pub(crate) use staircase::count_between;

/// An exponent vector, equivalently the monomial `x^m`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zero(num_vars: usize) -> Self {
        ExponentVector(vec![0; num_vars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &[u32]) -> bool {
        self.0.iter().zip(other).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A monomial ideal given by its minimal generators.
///
/// Generators are sorted by degree and then lexicographically, so equal
/// ideals have identical representations. No generators means the zero
/// ideal; the single generator `0` is the unit ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    num_vars: usize,
    gens: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by arbitrary monomials (minimalized).
    pub fn new(num_vars: usize, gens: Vec<Vec<u32>>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::InvalidArgument("a polynomial ring needs at least one variable".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.len() != num_vars) {
            return Err(Error::VariableCountMismatch {
                expected: num_vars,
                found: g.len(),
            });
        }
        Ok(Self::from_unsorted(
            num_vars,
            gens.into_iter().map(ExponentVector).collect(),
        ))
    }

    pub fn zero(num_vars: usize) -> Self {
        MonomialIdeal {
            num_vars,
            gens: Vec::new(),
        }
    }

    pub fn unit(num_vars: usize) -> Self {
        MonomialIdeal {
            num_vars,
            gens: vec![ExponentVector::zero(num_vars)],
        }
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_d)`.
    pub fn maximal(num_vars: usize) -> Self {
        Self::maximal_power(num_vars, 1)
    }

    /// `m^k`: all monomials of degree `k`.
    pub fn maximal_power(num_vars: usize, k: u32) -> Self {
        let mut gens = Vec::new();
        let mut cur = vec![0u32; num_vars];
        fill_degree(&mut cur, 0, k, &mut gens);
        gens.sort();
        MonomialIdeal {
            num_vars,
            gens: gens.into_iter().map(ExponentVector).collect(),
        }
    }

    /// Minimalizes and sorts an arbitrary generator list.
    pub(crate) fn from_unsorted(num_vars: usize, mut gens: Vec<ExponentVector>) -> Self {
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        gens.dedup();
        let mut kept: Vec<ExponentVector> = Vec::with_capacity(gens.len());
        let mut start_of_degree = 0;
        let mut current_degree = None;
        for g in gens {
            let deg = g.degree();
            if current_degree != Some(deg) {
                current_degree = Some(deg);
                start_of_degree = kept.len();
            }
            // Only generators of strictly smaller degree can divide `g`.
            if !kept[..start_of_degree].iter().any(|h| h.divides(&g.0)) {
                kept.push(g);
            }
        }
        MonomialIdeal {
            num_vars,
            gens: kept,
        }
    }

    /// Generators already known to be minimal and sorted.
    pub(crate) fn from_minimal(num_vars: usize, gens: Vec<ExponentVector>) -> Self {
        MonomialIdeal { num_vars, gens }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].degree() == 0
    }

    /// Degree shared by all generators, if there is one.
    pub fn generating_degree(&self) -> Option<u32> {
        let first = self.gens.first()?.degree();
        (self.gens.last()?.degree() == first).then_some(first)
    }

    fn check_vars(&self, n: usize) -> Result<()> {
        if n != self.num_vars {
            return Err(Error::VariableCountMismatch {
                expected: self.num_vars,
                found: n,
            });
        }
        Ok(())
    }

    pub fn contains_monomial(&self, m: &[u32]) -> Result<bool> {
        self.check_vars(m.len())?;
        Ok(self.contains(m))
    }

    pub(crate) fn contains(&self, m: &[u32]) -> bool {
        let deg: u32 = m.iter().sum();
        self.gens
            .iter()
            .take_while(|g| g.degree() <= deg)
            .any(|g| g.divides(m))
    }

    /// Whether `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool> {
        other.check_vars(self.num_vars)?;
        Ok(self.gens.iter().all(|g| other.contains(&g.0)))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_vars(other.num_vars)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.num_vars));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        if let (Some(a), Some(b)) = (self.generating_degree(), other.generating_degree()) {
            return Ok(equigen::product(self, a, other, b));
        }
        let mut sums = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                sums.push(g.add(h));
            }
        }
        Ok(Self::from_unsorted(self.num_vars, sums))
    }

    /// `self^n` by repeated squaring; `self^0` is the unit ideal.
    pub fn power(&self, mut n: u32) -> MonomialIdeal {
        let mut result = Self::unit(self.num_vars);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.product(&base).expect("same ring");
            }
            n >>= 1;
            if n > 0 {
                base = base.product(&base).expect("same ring");
            }
        }
        result
    }

    /// The ideal sum `self + other`.
    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_vars(other.num_vars)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Self::from_unsorted(self.num_vars, gens))
    }

    /// Largest degree of a minimal generator.
    pub fn max_gen_degree(&self) -> Result<u32> {
        self.gens
            .last()
            .map(ExponentVector::degree)
            .ok_or(Error::ZeroIdeal)
    }

    /// Exponent of the pure power of each variable among the generators.
    pub fn pure_powers(&self) -> Vec<Option<u32>> {
        (0..self.num_vars)
            .map(|k| {
                self.gens
                    .iter()
                    .filter(|g| g.0.iter().enumerate().all(|(i, &e)| i == k || e == 0))
                    .map(|g| g.0[k])
                    .min()
            })
            .collect()
    }

    /// Ok when `self` is m-primary, otherwise the first variable without a
    /// pure power.
    pub fn check_m_primary(&self) -> Result<()> {
        match self.pure_powers().iter().position(Option::is_none) {
            Some(var) => Err(Error::NotMPrimary { var }),
            None => Ok(()),
        }
    }

    pub fn is_m_primary(&self) -> bool {
        self.check_m_primary().is_ok()
    }

    /// Least `c` with `m^c ⊆ self`: one more than the largest degree of a
    /// standard monomial.
    pub fn smallest_mpower_inside(&self) -> Result<u32> {
        self.check_m_primary()?;
        if self.is_unit() {
            return Ok(0);
        }
        let bound: u32 = self
            .pure_powers()
            .iter()
            .map(|a| a.expect("m-primary") - 1)
            .sum();
        let stairs = Staircase::new(self, bound);
        Ok(stairs.max_standard_degree().map_or(0, |m| m + 1))
    }

    /// All monomials of the ideal with total degree exactly `degree`.
    pub fn level_set(&self, degree: u32) -> Vec<ExponentVector> {
        Staircase::new(self, degree).members_of_degree(degree)
    }

    /// All monomials of the ideal with total degree at most `bound`.
    pub fn members_up_to(&self, bound: u32) -> Vec<ExponentVector> {
        Staircase::new(self, bound).members()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", monomial_string(&g.0))?;
        }
        write!(f, ")")
    }
}

fn monomial_string(m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn fill_degree(cur: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        cur[pos] = e;
        fill_degree(cur, pos + 1, remaining - e, out);
    }
    cur[pos] = 0;
}

/// The product of a list of ideals (the unit ideal for an empty list).
pub fn product_of(num_vars: usize, ideals: &[&MonomialIdeal]) -> Result<MonomialIdeal> {
    ideals
        .iter()
        .try_fold(MonomialIdeal::unit(num_vars), |acc, i| acc.product(i))
}
