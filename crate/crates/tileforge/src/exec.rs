//! Execution strategy for the data-parallel enumeration kernels.
//!
//! Every kernel sorts and deduplicates its output, so the result is
//! independent of the mode and of the worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Selects how the enumeration kernels run.
///
/// Without the `parallel` feature, [`ExecMode::Parallel`] degrades to
/// sequential iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

pub(crate) fn map_collect<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => items.par_iter().map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        ExecMode::Parallel => items.iter().map(f).collect(),
    }
}

pub(crate) fn filter_map_collect<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().filter_map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => items.par_iter().filter_map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        ExecMode::Parallel => items.iter().filter_map(f).collect(),
    }
}

pub(crate) fn flat_map_collect<T, U, I, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    I: IntoIterator<Item = U>,
    F: Fn(&T) -> I + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().flat_map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => items.par_iter().flat_map_iter(f).collect(),
        #[cfg(not(feature = "parallel"))]
        ExecMode::Parallel => items.iter().flat_map(f).collect(),
    }
}
