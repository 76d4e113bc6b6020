//! Exact convex geometry over the rationals.

mod hull;
mod mixed;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Solution};
use crate::rational::{self, Rational};

pub use mixed::{
    mixed_volume, mixed_volume_interpolation, mixed_volume_multidegree,
    mixed_volume_polarization, volume_polynomial, VolumePolynomial,
};

/// A point of `Q^d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RationalVector(coords.iter().map(|&x| rational::int(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        RationalVector(vec![Rational::zero(); dim])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|a| a * s).collect())
    }

    /// Sum of the coordinates.
    pub fn coordinate_sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `normal · x <= offset` (or `==` for equations).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

impl Halfspace {
    fn lhs(&self, x: &[Rational]) -> Rational {
        self.normal
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (a, b)| acc + b * a)
    }

    /// `normal · m` compared with `offset · n`, all in integers.
    fn compare_scaled(&self, m: &[u32], n: u64) -> std::cmp::Ordering {
        let lhs = self
            .normal
            .iter()
            .zip(m)
            .fold(BigInt::zero(), |acc, (a, &b)| acc + a * BigInt::from(b));
        (lhs * self.offset.denom()).cmp(&(self.offset.numer() * BigInt::from(n)))
    }
}

/// A convex polytope with rational vertices.
///
/// The vertex list is always the vertex set of its own hull, sorted
/// lexicographically, so two polytopes are equal exactly when their vertex
/// lists are. An H-representation (facet inequalities plus the equations of
/// the affine hull) is kept alongside for membership tests.
#[derive(Debug, Clone)]
pub struct RationalPolytope {
    dim: usize,
    vertices: Vec<RationalVector>,
    affine_dim: usize,
    equations: Vec<Halfspace>,
    facets: Vec<Halfspace>,
    volume: Rational,
}

impl PartialEq for RationalPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for RationalPolytope {}

impl RationalPolytope {
    /// Convex hull of a non-empty list of points of equal dimension.
    pub fn convex_hull(points: &[RationalVector]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput("point list"))?;
        let dim = first.dim();
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        Ok(build(dim, pts))
    }

    pub fn from_int_points(points: &[Vec<i64>]) -> Result<Self> {
        let pts: Vec<RationalVector> = points.iter().map(|p| RationalVector::from_ints(p)).collect();
        Self::convex_hull(&pts)
    }

    pub fn point(p: RationalVector) -> Self {
        let dim = p.dim();
        build(dim, vec![p])
    }

    /// `conv{0, e_1, ..., e_d}`.
    pub fn standard_simplex(dim: usize) -> Self {
        let mut pts = vec![RationalVector::zero(dim)];
        for i in 0..dim {
            let mut e = vec![0; dim];
            e[i] = 1;
            pts.push(RationalVector::from_ints(&e));
        }
        build(dim, pts)
    }

    /// `[0,1]^d`.
    pub fn unit_cube(dim: usize) -> Self {
        let pts: Vec<RationalVector> = (0..1u64 << dim)
            .map(|mask| {
                RationalVector::from_ints(&(0..dim).map(|i| ((mask >> i) & 1) as i64).collect::<Vec<_>>())
            })
            .collect();
        build(dim, pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn equations(&self) -> &[Halfspace] {
        &self.equations
    }

    /// d-dimensional Lebesgue volume (zero unless full-dimensional).
    pub fn volume(&self) -> Rational {
        self.volume.clone()
    }

    /// Whether every vertex has integer coordinates.
    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(RationalVector::is_integral)
    }

    pub fn contains_point(&self, q: &RationalVector) -> Result<bool> {
        if q.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: q.dim(),
            });
        }
        let x = q.coords();
        Ok(self.equations.iter().all(|h| h.lhs(x) == h.offset)
            && self.facets.iter().all(|h| h.lhs(x) <= h.offset))
    }

    /// Whether `m / n` lies in the polytope, for a lattice point `m` and a
    /// positive integer `n`.
    pub fn contains_scaled(&self, m: &[u32], n: u64) -> bool {
        debug_assert_eq!(m.len(), self.dim);
        use std::cmp::Ordering;
        self.equations
            .iter()
            .all(|h| h.compare_scaled(m, n) == Ordering::Equal)
            && self
                .facets
                .iter()
                .all(|h| h.compare_scaled(m, n) != Ordering::Greater)
    }

    pub fn minkowski_sum(&self, other: &RationalPolytope) -> Result<RationalPolytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v in &self.vertices {
            for w in &other.vertices {
                pts.push(v.add(w));
            }
        }
        pts.sort();
        pts.dedup();
        Ok(build(self.dim, pts))
    }

    /// `s · P` for a non-negative rational `s`.
    pub fn scale(&self, s: &Rational) -> RationalPolytope {
        assert!(!s.is_negative(), "scale factor must be non-negative");
        if s.is_zero() {
            return Self::point(RationalVector::zero(self.dim));
        }
        let map_h = |h: &Halfspace| Halfspace {
            normal: h.normal.clone(),
            offset: &h.offset * s,
        };
        RationalPolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.scale(s)).collect(),
            affine_dim: self.affine_dim,
            equations: self.equations.iter().map(map_h).collect(),
            facets: self.facets.iter().map(map_h).collect(),
            volume: &self.volume * num_traits::pow(s.clone(), self.dim),
        }
    }

    pub fn translate(&self, t: &RationalVector) -> Result<RationalPolytope> {
        self.minkowski_sum(&Self::point(t.clone()))
    }
}

pub fn convex_hull(points: &[RationalVector]) -> Result<RationalPolytope> {
    RationalPolytope::convex_hull(points)
}

pub fn minkowski_sum(p: &RationalPolytope, q: &RationalPolytope) -> Result<RationalPolytope> {
    p.minkowski_sum(q)
}

pub fn volume(p: &RationalPolytope) -> Rational {
    p.volume()
}

pub fn contains_point(p: &RationalPolytope, q: &RationalVector) -> Result<bool> {
    p.contains_point(q)
}

/// Builds the polytope from sorted, distinct points.
fn build(dim: usize, pts: Vec<RationalVector>) -> RationalPolytope {
    let scale = rational::common_denominator(pts.iter().flat_map(|p| p.coords()));
    let ints: Vec<Vec<BigInt>> = pts
        .iter()
        .map(|p| {
            p.coords()
                .iter()
                .map(|x| x.numer() * (&scale / x.denom()))
                .collect()
        })
        .collect();
    let max_bits = ints.iter().flatten().map(|x| x.bits()).max().unwrap_or(0);
    if fits_i128(dim, max_bits) {
        let small: Vec<Vec<i128>> = ints
            .iter()
            .map(|p| p.iter().map(|x| x.to_i128().unwrap()).collect())
            .collect();
        let h = hull::hull(&small);
        assemble(dim, &pts, &small, &h, &scale)
    } else {
        let h = hull::hull(&ints);
        assemble(dim, &pts, &ints, &h, &scale)
    }
}

/// Conservative check that every intermediate of the integer hull fits in
/// an `i128`: Bareiss products are bounded by twice the Hadamard bound of
/// the difference matrices.
fn fits_i128(k: usize, max_bits: u64) -> bool {
    let log_fact: f64 = (1..=k).map(|i| (i as f64).log2()).sum();
    let bound = log_fact + k as f64 * (max_bits as f64 + 2.0);
    2.0 * bound + 8.0 < 126.0
}

fn to_big<T: hull::Exact + Into<BigInt>>(x: &T) -> BigInt {
    x.clone().into()
}

fn assemble<T: hull::Exact + Into<BigInt>>(
    dim: usize,
    pts: &[RationalVector],
    ints: &[Vec<T>],
    h: &hull::IntHull<T>,
    scale: &BigInt,
) -> RationalPolytope {
    let k = h.affine_dim();
    let mut vertices: Vec<RationalVector> = h.vertices.iter().map(|&i| pts[i].clone()).collect();
    vertices.sort();

    let scale_q = Rational::from_integer(scale.clone());
    let facets = h
        .facets
        .iter()
        .map(|(a, b)| {
            let mut normal = vec![BigInt::zero(); dim];
            for (c, x) in h.pivots.iter().zip(a) {
                normal[*c] = to_big(x);
            }
            Halfspace {
                normal,
                offset: Rational::from_integer(to_big(b)) / &scale_q,
            }
        })
        .collect();

    let equations = affine_equations(dim, &h.pivots, &h.directions, &pts[0]);

    let volume = if k == dim && dim > 0 {
        let total: BigInt = h
            .simplices
            .iter()
            .map(|s| to_big(&hull::simplex_measure(ints, &h.pivots, s)))
            .sum();
        Rational::new(total, rational::factorial(dim as u32) * scale.pow(dim as u32))
    } else if dim == 0 {
        Rational::one()
    } else {
        Rational::zero()
    };

    RationalPolytope {
        dim,
        vertices,
        affine_dim: k,
        equations,
        facets,
        volume,
    }
}

/// One equation per non-pivot coordinate, cutting out the affine hull
/// spanned by `directions` through `base`.
fn affine_equations<T: hull::Exact + Into<BigInt>>(
    dim: usize,
    pivots: &[usize],
    directions: &[Vec<T>],
    base: &RationalVector,
) -> Vec<Halfspace> {
    let k = pivots.len();
    let square: Vec<Vec<Rational>> = directions
        .iter()
        .map(|row| pivots.iter().map(|&c| Rational::from_integer(to_big(&row[c]))).collect())
        .collect();
    let mut out = Vec::new();
    for j in (0..dim).filter(|j| !pivots.contains(j)) {
        let mut normal = vec![Rational::zero(); dim];
        normal[j] = Rational::one();
        if k > 0 {
            let rhs: Vec<Rational> = directions
                .iter()
                .map(|row| -Rational::from_integer(to_big(&row[j])))
                .collect();
            let Solution::Unique(x) = linalg::solve(square.clone(), rhs) else {
                unreachable!("pivot block of the direction matrix is invertible");
            };
            for (c, v) in pivots.iter().zip(x) {
                normal[*c] = v;
            }
        }
        let den = rational::common_denominator(normal.iter());
        let mut ints: Vec<BigInt> = normal.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
        let h = Halfspace {
            normal: ints,
            offset: Rational::zero(),
        };
        let offset = h.lhs(base.coords());
        out.push(Halfspace { offset, ..h });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn poly(raw: &[&[i64]]) -> RationalPolytope {
        RationalPolytope::from_int_points(&raw.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn q(coords: &[(i64, i64)]) -> RationalVector {
        RationalVector::new(coords.iter().map(|&(n, d)| frac(n, d)).collect())
    }

    #[test]
    fn interior_point_is_dropped() {
        let p = RationalPolytope::convex_hull(&[
            q(&[(0, 1), (0, 1)]),
            q(&[(1, 1), (0, 1)]),
            q(&[(0, 1), (1, 1)]),
            q(&[(1, 4), (1, 4)]),
        ])
        .unwrap();
        assert_eq!(p, poly(&[&[0, 0], &[1, 0], &[0, 1]]));
        assert_eq!(p.vertices().len(), 3);
    }

    #[test]
    fn single_point() {
        let p = poly(&[&[0, 0]]);
        assert_eq!(p.vertices(), &[RationalVector::from_ints(&[0, 0])]);
        assert_eq!(p.affine_dim(), 0);
        assert_eq!(p.volume(), int(0));
        assert!(p.contains_point(&RationalVector::from_ints(&[0, 0])).unwrap());
        assert!(!p.contains_point(&RationalVector::from_ints(&[0, 1])).unwrap());
    }

    #[test]
    fn pentagon_from_minkowski_sum() {
        let square = RationalPolytope::unit_cube(2);
        let tri = RationalPolytope::standard_simplex(2);
        let sum = square.minkowski_sum(&tri).unwrap();
        let expected = poly(&[&[0, 0], &[2, 0], &[2, 1], &[1, 2], &[0, 2]]);
        assert_eq!(sum, expected);
        let hull = poly(&[&[0, 0], &[2, 0], &[1, 1], &[0, 2], &[2, 1], &[1, 2]]);
        assert_eq!(hull, expected);
        assert_eq!(sum.volume(), frac(7, 2));
    }

    #[test]
    fn volumes_of_cubes_and_simplices() {
        for d in 1..=4 {
            assert_eq!(RationalPolytope::unit_cube(d).volume(), int(1));
            assert_eq!(
                RationalPolytope::standard_simplex(d).volume(),
                Rational::new(BigInt::one(), rational::factorial(d as u32))
            );
        }
    }

    #[test]
    fn membership() {
        let square = RationalPolytope::unit_cube(2);
        assert!(square.contains_point(&q(&[(1, 2), (1, 2)])).unwrap());
        assert!(!square.contains_point(&q(&[(3, 2), (0, 1)])).unwrap());
        let tri = RationalPolytope::standard_simplex(2);
        assert!(tri.contains_point(&q(&[(1, 2), (1, 2)])).unwrap());
        assert!(matches!(
            tri.contains_point(&RationalVector::from_ints(&[0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lower_dimensional_membership_uses_equations() {
        let seg = poly(&[&[0, 0, 0], &[2, 2, 1]]);
        assert_eq!(seg.affine_dim(), 1);
        assert_eq!(seg.equations().len(), 2);
        assert!(seg.contains_point(&q(&[(1, 1), (1, 1), (1, 2)])).unwrap());
        assert!(!seg.contains_point(&q(&[(1, 1), (1, 1), (1, 1)])).unwrap());
        assert!(seg.contains_scaled(&[2, 2, 1], 2));
        assert!(seg.contains_scaled(&[2, 2, 1], 1));
        assert!(!seg.contains_scaled(&[4, 4, 2], 1));
    }

    #[test]
    fn scaling_matches_hull_of_scaled_points() {
        let tri = poly(&[&[0, 0], &[3, 1], &[1, 2]]);
        let s = frac(3, 2);
        let scaled = tri.scale(&s);
        let rebuilt = RationalPolytope::convex_hull(
            &tri.vertices().iter().map(|v| v.scale(&s)).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(scaled, rebuilt);
        assert_eq!(scaled.volume(), rebuilt.volume());
        assert_eq!(scaled.facets().len(), 3);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            RationalPolytope::convex_hull(&[]),
            Err(Error::EmptyInput(_))
        ));
        assert!(matches!(
            RationalPolytope::from_int_points(&[vec![0, 0], vec![1]]),
            Err(Error::DimensionMismatch { .. })
        ));
        let a = RationalPolytope::unit_cube(2);
        let b = RationalPolytope::unit_cube(3);
        assert!(a.minkowski_sum(&b).is_err());
    }

    #[test]
    fn large_coordinates_take_the_bigint_path() {
        let big = 1i64 << 40;
        let p = poly(&[&[0, 0, 0, 0], &[big, 0, 0, 0], &[0, big, 0, 0], &[0, 0, big, 0], &[0, 0, 0, big]]);
        assert_eq!(
            p.volume(),
            Rational::new(BigInt::from(big).pow(4u32), BigInt::from(24))
        );
    }
}
