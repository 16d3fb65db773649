//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature (default) work is spread over the rayon pool
//! unless the caller asks for sequential execution; without it everything
//! runs on the calling thread. Results are always returned in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution policy threaded through the verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exec {
    pub parallel: bool,
}

impl Default for Exec {
    fn default() -> Self {
        Exec { parallel: cfg!(feature = "parallel") }
    }
}

impl Exec {
    pub fn sequential() -> Exec {
        Exec { parallel: false }
    }

    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}
