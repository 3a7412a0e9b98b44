//! Data-parallel map with a sequential fallback.
//!
//! The `parallel` feature routes independent work items (witness restarts,
//! sampling sweeps) through rayon. Results are collected per wave and
//! reduced deterministically by the caller, so outputs are identical with
//! the feature on or off and for any thread count.

#[cfg(feature = "parallel")]
pub(crate) fn map_indices<T, F>(range: std::ops::Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indices<T, F>(range: std::ops::Range<usize>, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    range.map(f).collect()
}
