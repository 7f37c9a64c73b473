//! Execution strategy for the data-parallel inner loops.
//!
//! Core computations filter large candidate sets independently, so they
//! fan out with rayon when the `parallel` feature is enabled. The
//! sequential path is always available and produces identical output in
//! identical order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Order-preserving filter over a slice.
pub fn filter_slice<T, F>(exec: Exec, items: &[T], pred: F) -> Vec<T>
where
    T: Clone + Send + Sync,
    F: Fn(&T) -> bool + Send + Sync,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().filter(|t| pred(t)).cloned().collect(),
        _ => items.iter().filter(|t| pred(t)).cloned().collect(),
    }
}

/// Order-preserving map over owned items.
pub fn map_vec<T, U, F>(exec: Exec, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.into_par_iter().map(f).collect(),
        _ => items.into_iter().map(f).collect(),
    }
}
