//! Execution of verification sweeps, on the rayon pool when the `parallel`
//! feature is enabled and sequentially otherwise.
//!
//! Each draw is a pure function of its index, and the reduction is a max, so
//! both modes return bit-identical results.

use crate::error::Result;
use crate::linalg::nan_max;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Largest value of `f(i)` for `i` in `0..n`; NaN propagates, errors abort.
pub fn try_max_over<F>(exec: Execution, n: u64, f: F) -> Result<f64>
where
    F: Fn(u64) -> Result<f64> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n)
                .into_par_iter()
                .map(&f)
                .try_reduce(|| 0.0, |a, b| Ok(nan_max(a, b)))
        }
        _ => (0..n).try_fold(0.0, |acc, i| Ok(nan_max(acc, f(i)?))),
    }
}

pub fn max_over<F>(exec: Execution, n: u64, f: F) -> f64
where
    F: Fn(u64) -> f64 + Sync + Send,
{
    try_max_over(exec, n, |i| Ok(f(i))).expect("infallible")
}

/// `f(i)` for `i` in `0..n`, in index order.
pub fn map_indexed<T, F>(exec: Execution, n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}
