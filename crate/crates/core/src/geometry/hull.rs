//! Exact convex hulls of integer point sets in any dimension.
//!
//! The affine hull is found first and the points are projected onto a set of
//! coordinates on which that projection is injective. In the projected,
//! full-dimensional space a placing triangulation is built: points are
//! inserted one at a time and coned over every boundary facet they see
//! strictly. The boundary simplices then give the facet hyperplanes, and a
//! point is a vertex exactly when the normals of the facets through it have
//! full rank.
//!
//! Everything is generic over the integer type so small inputs can run on
//! `i128` and large ones fall back to `BigInt`.

use std::collections::HashMap;
use std::fmt::Debug;

use num_integer::Integer;
use num_traits::Signed;

pub(crate) trait Exact: Clone + Integer + Signed + Debug + Send + Sync {}
impl<T: Clone + Integer + Signed + Debug + Send + Sync> Exact for T {}

pub(crate) struct IntHull<T> {
    /// Coordinates onto which the affine hull projects injectively.
    pub pivots: Vec<usize>,
    /// Spanning directions of the affine hull, one per pivot.
    pub directions: Vec<Vec<T>>,
    /// Facet inequalities `a·y <= b` in pivot coordinates.
    pub facets: Vec<(Vec<T>, T)>,
    /// Maximal simplices of a triangulation (indices into the input).
    pub simplices: Vec<Vec<usize>>,
    /// Indices of the input points that are vertices.
    pub vertices: Vec<usize>,
}

impl<T: Exact> IntHull<T> {
    pub fn affine_dim(&self) -> usize {
        self.pivots.len()
    }
}

pub(crate) fn det<T: Exact>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    match n {
        0 => return T::one(),
        1 => return m[0][0].clone(),
        2 => return m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone(),
        3 => {
            let minor = |a: usize, b: usize, c: usize, d: usize| {
                m[1][a].clone() * m[2][b].clone() - m[1][c].clone() * m[2][d].clone()
            };
            return m[0][0].clone() * minor(1, 2, 2, 1) - m[0][1].clone() * minor(0, 2, 2, 0)
                + m[0][2].clone() * minor(0, 1, 1, 0);
        }
        _ => {}
    }
    // Bareiss fraction-free elimination.
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

pub(crate) fn rank<T: Exact>(rows: &[Vec<T>]) -> usize {
    let mut reduced: Vec<(Vec<T>, usize)> = Vec::new();
    for row in rows {
        if let Some(r) = reduce_against(row.clone(), &reduced) {
            reduced.push(r);
        }
    }
    reduced.len()
}

/// Reduces `v` against rows whose pivot columns are zero in every later row.
/// Returns the reduced vector together with its pivot column when non-zero.
fn reduce_against<T: Exact>(mut v: Vec<T>, rows: &[(Vec<T>, usize)]) -> Option<(Vec<T>, usize)> {
    for (row, pc) in rows {
        if v[*pc].is_zero() {
            continue;
        }
        let a = row[*pc].clone();
        let b = v[*pc].clone();
        for (x, r) in v.iter_mut().zip(row) {
            *x = x.clone() * a.clone() - r.clone() * b.clone();
        }
        primitive(&mut v);
    }
    let pc = v.iter().position(|x| !x.is_zero())?;
    Some((v, pc))
}

fn primitive<T: Exact>(v: &mut [T]) {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = x.clone() / g.clone();
        }
    }
}

fn sub<T: Exact>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

fn dot<T: Exact>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

struct Facet<T> {
    pts: Vec<usize>,
    /// Sign of the orientation determinant at an interior reference point.
    inside: T,
}

fn orientation<T: Exact>(ys: &[Vec<T>], facet: &[usize], q: usize) -> T {
    let rows = facet.iter().map(|&f| sub(&ys[f], &ys[q])).collect();
    det(rows).signum()
}

/// Computes the hull of distinct integer points (all of the same length).
pub(crate) fn hull<T: Exact>(pts: &[Vec<T>]) -> IntHull<T> {
    debug_assert!(!pts.is_empty());
    let p0 = &pts[0];
    let mut rows: Vec<(Vec<T>, usize)> = Vec::new();
    let mut init = vec![0usize];
    for (i, p) in pts.iter().enumerate().skip(1) {
        if let Some(r) = reduce_against(sub(p, p0), &rows) {
            rows.push(r);
            init.push(i);
        }
    }
    let pivots: Vec<usize> = rows.iter().map(|(_, pc)| *pc).collect();
    let directions: Vec<Vec<T>> = rows.into_iter().map(|(r, _)| r).collect();
    let k = pivots.len();
    if k == 0 {
        return IntHull {
            pivots,
            directions,
            facets: Vec::new(),
            simplices: vec![vec![0]],
            vertices: vec![0],
        };
    }

    let ys: Vec<Vec<T>> = pts
        .iter()
        .map(|p| pivots.iter().map(|&c| p[c].clone()).collect())
        .collect();

    let mut boundary: Vec<Facet<T>> = Vec::new();
    for j in 0..=k {
        let mut pts_f: Vec<usize> = init.clone();
        let opposite = pts_f.remove(j);
        let inside = orientation(&ys, &pts_f, opposite);
        boundary.push(Facet { pts: pts_f, inside });
    }
    let mut simplices = vec![init.clone()];
    let mut used = vec![false; pts.len()];
    for &i in &init {
        used[i] = true;
    }

    for q in 0..pts.len() {
        if used[q] {
            continue;
        }
        let mut visible = vec![false; boundary.len()];
        let mut any = false;
        for (f, facet) in boundary.iter().enumerate() {
            let s = orientation(&ys, &facet.pts, q);
            if !s.is_zero() && s != facet.inside {
                visible[f] = true;
                any = true;
            }
        }
        if !any {
            continue;
        }
        used[q] = true;
        // Ridges seen once among the visible facets form the horizon.
        let mut ridges: HashMap<Vec<usize>, (u32, usize)> = HashMap::new();
        for (f, facet) in boundary.iter().enumerate() {
            if !visible[f] {
                continue;
            }
            let mut simplex = facet.pts.clone();
            simplex.push(q);
            simplices.push(simplex);
            for j in 0..facet.pts.len() {
                let mut ridge = facet.pts.clone();
                let opposite = ridge.remove(j);
                let entry = ridges.entry(ridge).or_insert((0, opposite));
                entry.0 += 1;
            }
        }
        let mut next: Vec<Facet<T>> = boundary
            .into_iter()
            .zip(&visible)
            .filter(|(_, v)| !**v)
            .map(|(f, _)| f)
            .collect();
        let mut horizon: Vec<(Vec<usize>, usize)> = ridges
            .into_iter()
            .filter(|(_, (count, _))| *count == 1)
            .map(|(ridge, (_, opposite))| (ridge, opposite))
            .collect();
        horizon.sort();
        for (mut ridge, opposite) in horizon {
            ridge.push(q);
            ridge.sort_unstable();
            let inside = orientation(&ys, &ridge, opposite);
            next.push(Facet { pts: ridge, inside });
        }
        boundary = next;
    }

    let mut facets: Vec<(Vec<T>, T)> = Vec::new();
    for facet in &boundary {
        let base = &ys[facet.pts[0]];
        let m: Vec<Vec<T>> = facet.pts[1..].iter().map(|&f| sub(&ys[f], base)).collect();
        let mut normal: Vec<T> = (0..k)
            .map(|c| {
                let minor = m
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != c)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let d = det(minor);
                if c % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .collect();
        let mut offset = dot(&normal, base);
        // Orient so that the rest of the hull lies on the `<=` side.
        let probe = (0..pts.len())
            .filter(|&i| used[i])
            .map(|i| dot(&normal, &ys[i]))
            .find(|v| *v != offset)
            .expect("full-dimensional hull has a point off every facet");
        if probe > offset {
            normal.iter_mut().for_each(|x| *x = -x.clone());
            offset = -offset;
        }
        let mut all = normal;
        all.push(offset);
        primitive(&mut all);
        let offset = all.pop().unwrap();
        facets.push((all, offset));
    }
    facets.sort();
    facets.dedup();

    let vertices: Vec<usize> = (0..pts.len())
        .filter(|&i| used[i])
        .filter(|&i| {
            let tight: Vec<Vec<T>> = facets
                .iter()
                .filter(|(a, b)| dot(a, &ys[i]) == *b)
                .map(|(a, _)| a.clone())
                .collect();
            tight.len() >= k && rank(&tight) == k
        })
        .collect();

    IntHull {
        pivots,
        directions,
        facets,
        simplices,
        vertices,
    }
}

/// Absolute value of the determinant of the simplex spanned by the given
/// points (in pivot coordinates), i.e. `k!` times its volume.
pub(crate) fn simplex_measure<T: Exact>(pts: &[Vec<T>], pivots: &[usize], simplex: &[usize]) -> T {
    let y = |i: usize| -> Vec<T> { pivots.iter().map(|&c| pts[i][c].clone()).collect() };
    let base = y(simplex[0]);
    let rows = simplex[1..].iter().map(|&i| sub(&y(i), &base)).collect();
    det(rows).abs()
}
