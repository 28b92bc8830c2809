//! Data-parallel helpers.
//!
//! With the `parallel` feature (on by default) the hot loops run on the
//! rayon pool; without it every strategy runs sequentially. Results are
//! always collected in index order, so output never depends on the
//! strategy or the number of workers.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    Sequential,
    /// Parallel when the `parallel` feature is enabled.
    #[default]
    Parallel,
}

impl Strategy {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// `f(0), f(1), …, f(n - 1)` in index order.
pub fn map_range<T, F>(strategy: Strategy, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = strategy;
    (0..n).map(f).collect()
}

/// Applies `f` to every item, preserving order.
pub fn map_slice<S, T, F>(strategy: Strategy, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// Folds `f(lo..hi)` over chunks of the index range and merges the chunk
/// results with `merge` in chunk order.
pub fn fold_chunks<T, F, M>(strategy: Strategy, n: u64, chunk: u64, f: F, merge: M) -> Option<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync + Send,
    M: Fn(T, T) -> T,
{
    let chunk = chunk.max(1);
    let chunks = n.div_ceil(chunk) as usize;
    let parts = map_range(strategy, chunks, |k| {
        let lo = k as u64 * chunk;
        f(lo, (lo + chunk).min(n))
    });
    parts.into_iter().reduce(merge)
}
