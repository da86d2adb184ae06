//! Execution helpers that run data-parallel under the `parallel` feature and
//! sequentially without it.
//!
//! Every helper preserves output order, so reductions downstream can run in
//! a fixed order and results do not depend on thread scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to each disjoint chunk of `chunk` elements.
#[cfg(feature = "parallel")]
pub fn chunks_mut_for_each<T, F>(data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(&mut [T]) + Send + Sync,
{
    data.par_chunks_mut(chunk).for_each(f);
}

#[cfg(not(feature = "parallel"))]
pub fn chunks_mut_for_each<T, F>(data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(&mut [T]) + Send + Sync,
{
    data.chunks_mut(chunk).for_each(f);
}

/// Maps `f` over `0..n` into a vector ordered by index.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    (0..n).map(f).collect()
}

/// Maps a fallible `f` over `0..n`, keeping index order and failing fast.
#[cfg(feature = "parallel")]
pub fn try_map_indexed<T, E, F>(n: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<T, E> + Send + Sync,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn try_map_indexed<T, E, F>(n: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<T, E> + Send + Sync,
{
    (0..n).map(f).collect()
}
