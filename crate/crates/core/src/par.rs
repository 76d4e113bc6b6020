//! Data-parallel helpers.
//!
//! With the `parallel` feature (default) these dispatch to rayon; without it
//! they are plain sequential iterators. Results are always returned in input
//! order, so reductions over them are deterministic either way.

use crate::error::Result;

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(feature = "parallel")]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn try_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn try_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Sum of `f` over `0..n`.
#[cfg(feature = "parallel")]
pub fn sum_range<F>(n: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).sum()
}

#[cfg(not(feature = "parallel"))]
pub fn sum_range<F>(n: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    (0..n).map(f).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..1000).collect();
        let ys = map(&xs, |x| x * 2);
        assert!(ys.iter().enumerate().all(|(i, y)| *y == 2 * i as u64));
        assert_eq!(sum_range(101, |i| i as u64), 5050);
    }
}
