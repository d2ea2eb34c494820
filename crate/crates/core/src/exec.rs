//! Execution policy for the data-parallel loops.
//!
//! With the `parallel` feature (default) `Exec::Parallel` fans work out over
//! rayon; without it every policy runs sequentially. Results never depend on
//! the policy: searches return the first hit in task order.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// First `Some` in task order.
pub(crate) fn find_map_first<T, R, F>(exec: Exec, tasks: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return tasks.par_iter().find_map_first(f);
    }
    let _ = exec;
    tasks.iter().find_map(f)
}

pub(crate) fn map_collect<T, R, F>(exec: Exec, tasks: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return tasks.par_iter().map(f).collect();
    }
    let _ = exec;
    tasks.iter().map(f).collect()
}
