//! Data-parallel execution helpers.
//!
//! Workloads in this crate decompose over independent items: images in a
//! dataset pass, samples in a training batch, iterations of a metric
//! bootstrap. `par_map`/`par_map_range` run those loops on rayon when the
//! `parallel` feature is enabled, and as plain sequential iteration
//! otherwise. Output order always matches input order, so results are
//! identical either way.
//!
//! [`force_sequential`] disables the rayon path at runtime on a parallel
//! build; the criterion bench suite uses it to compare both paths in a
//! single binary.

use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Globally disable (or re-enable) the rayon path at runtime.
pub fn force_sequential(on: bool) {
    FORCE_SEQUENTIAL.store(on, Ordering::SeqCst);
}

/// True when the rayon path is disabled, either by build or at runtime.
pub fn sequential_forced() -> bool {
    if cfg!(feature = "parallel") {
        FORCE_SEQUENTIAL.load(Ordering::SeqCst)
    } else {
        true
    }
}

/// Map `f` over `items`, preserving input order.
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !sequential_forced() {
        use rayon::prelude::*;
        return items.par_iter().map(&f).collect();
    }
    items.iter().map(|t| f(t)).collect()
}

/// Map `f` over `0..n`, preserving index order.
pub fn par_map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !sequential_forced() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(&f).collect();
    }
    (0..n).map(f).collect()
}
