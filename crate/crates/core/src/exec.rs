//! Data-parallel helpers. With the `parallel` feature these run on the rayon
//! pool; without it they are plain sequential loops. Every helper produces
//! results in index order, so output never depends on the worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Minimum number of indices handed to one rayon task.
#[cfg(feature = "parallel")]
const MIN_CHUNK: usize = 64;

/// `(0..len).map(f).collect()`, possibly in parallel.
pub fn map_range<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().with_min_len(MIN_CHUNK).map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// Like [`map_range`] but for coarse-grained items (trials, reducers) where
/// every index is worth its own task.
pub fn map_tasks<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// Folds `0..len` into per-worker accumulators and merges them.
///
/// `combine` must be associative and commutative for the result to be
/// schedule-independent (integer sums are).
pub fn fold_range<A, I, F, C>(len: usize, init: I, fold: F, combine: C) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, usize) -> A + Sync + Send,
    C: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len)
            .into_par_iter()
            .with_min_len(MIN_CHUNK)
            .fold(&init, &fold)
            .reduce(&init, &combine)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = combine;
        (0..len).fold(init(), fold)
    }
}

/// Splits `0..len` into contiguous chunks, folds each chunk sequentially
/// (chunks run in parallel) and combines the chunk results left to right.
///
/// Use this instead of [`fold_range`] when accumulators are large, since it
/// bounds their number by the chunk count.
pub fn fold_chunks<A, I, F, C>(len: usize, init: I, fold: F, combine: C) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, usize) -> A + Sync + Send,
    C: Fn(A, A) -> A,
{
    let chunks = chunk_count().min(len.max(1));
    let bounds = |c: usize| c * len / chunks;
    let parts = map_tasks(chunks, |c| (bounds(c)..bounds(c + 1)).fold(init(), &fold));
    parts.into_iter().reduce(combine).unwrap_or_else(init)
}

fn chunk_count() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads() * 4
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Whether the crate was built with the rayon backend.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
