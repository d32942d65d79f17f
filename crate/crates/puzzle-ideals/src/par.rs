//! Data-parallel helpers with a sequential fallback.
//!
//! With the default `parallel` feature the maps below fan out over rayon's
//! global pool; without it the same call sites run on plain iterators.  When
//! the feature is enabled a process-wide switch can still force sequential
//! execution at run time, which is what the benchmark suite uses to compare
//! the two modes inside a single binary.

use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Forces all parallel helpers to run sequentially (used by benchmarks).
pub fn set_force_sequential(force: bool) {
    FORCE_SEQUENTIAL.store(force, Ordering::SeqCst);
}

/// Whether parallel execution is currently active.
pub fn parallel_active() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.load(Ordering::SeqCst)
}

/// Maps `f` over `items`, in parallel when available.
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel_active() {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
    }
    items.into_iter().map(f).collect()
}

/// Maps `f` over `items` and concatenates the resulting vectors, in parallel
/// when available.
pub fn par_flat_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Vec<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel_active() {
            use rayon::prelude::*;
            return items.into_par_iter().flat_map_iter(f).collect();
        }
    }
    items.into_iter().flat_map(f).collect()
}

/// True when `f` holds for every item, in parallel when available.
pub fn par_all<T, F>(items: Vec<T>, f: F) -> bool
where
    T: Send,
    F: Fn(T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel_active() {
            use rayon::prelude::*;
            return items.into_par_iter().all(f);
        }
    }
    items.into_iter().all(f)
}
