//! Data-parallel execution helpers.
//!
//! Sweeps (portrait grids, frequency tables, lattice scans, DFT bins) map
//! independent work items to results with deterministic output ordering.
//! With the `parallel` feature the maps run on the rayon pool; without it
//! they fall back to plain sequential iterators. The `*_seq` variants are
//! always available so benchmarks can compare both paths in one build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n`, collecting results in index order.
pub fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sequential reference implementation of [`map_indexed`].
pub fn map_indexed_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

/// Fold `f` over `0..n` and merge partial results with `merge`.
/// `identity` must be a neutral element for `merge`.
pub fn fold_indexed<U, F, M>(n: usize, identity: U, f: F, merge: M) -> U
where
    U: Send + Sync + Clone,
    F: Fn(usize) -> U + Sync + Send,
    M: Fn(U, U) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map(f)
            .reduce(|| identity.clone(), &merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).fold(identity, merge)
    }
}

/// Sequential reference implementation of [`fold_indexed`].
pub fn fold_indexed_seq<U, F, M>(n: usize, identity: U, f: F, merge: M) -> U
where
    F: Fn(usize) -> U,
    M: Fn(U, U) -> U,
{
    (0..n).map(f).fold(identity, merge)
}
