//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the map fans out over rayon's
//! global pool; without it the same call runs sequentially. Results come back
//! in input order either way, so callers are deterministic regardless of the
//! feature or the thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Maps `f` over `items`, preserving order.
#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// True when this build fans work out over rayon.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

/// Caps rayon's global pool at `jobs` threads. Call at most once, before any
/// parallel work; later calls and sequential builds are no-ops.
#[cfg(feature = "parallel")]
pub fn configure_jobs(jobs: usize) {
    if jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
}

/// Caps rayon's global pool at `jobs` threads. Call at most once, before any
/// parallel work; later calls and sequential builds are no-ops.
#[cfg(not(feature = "parallel"))]
pub fn configure_jobs(_jobs: usize) {}
