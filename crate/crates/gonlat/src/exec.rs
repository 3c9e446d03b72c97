//! Choice of execution strategy for the embarrassingly parallel parts:
//! per-class invariant evaluation and box-scan subdivision.
//!
//! The `parallel` cargo feature (on by default) pulls in rayon. Without it,
//! `Exec::Parallel` quietly degrades to the sequential path so callers never
//! need to care which build they are on.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        Exec::Parallel
    }
}

impl Exec {
    /// True when this run will actually fan out across threads.
    pub fn is_parallel(self) -> bool {
        match self {
            Exec::Sequential => false,
            Exec::Parallel => cfg!(feature = "parallel"),
        }
    }

    /// Maps `f` over `items`, preserving order of results.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            if self.is_parallel() {
                use rayon::prelude::*;
                return items.into_par_iter().map(f).collect();
            }
        }
        items.into_iter().map(f).collect()
    }
}

/// Builds the global rayon thread pool from the GONLAT_THREADS environment
/// variable when it is set. Returns the thread count actually in effect, or
/// None when running sequentially-only. Safe to call more than once; only
/// the first call can size the pool.
pub fn init_threads_from_env() -> Option<usize> {
    #[cfg(feature = "parallel")]
    {
        if let Ok(raw) = std::env::var("GONLAT_THREADS") {
            if let Ok(n) = raw.trim().parse::<usize>() {
                if n >= 1 {
                    let _ = rayon::ThreadPoolBuilder::new()
                        .num_threads(n)
                        .build_global();
                }
            }
        }
        Some(rayon::current_num_threads())
    }
    #[cfg(not(feature = "parallel"))]
    {
        None
    }
}
