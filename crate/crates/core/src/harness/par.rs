//! Case evaluation, data-parallel when the `parallel` feature is on.

/// How a suite evaluates its cases.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

/// `items.map(f)` in input order. `Exec::Parallel` uses rayon when the
/// `parallel` feature is enabled and falls back to a plain loop otherwise.
pub fn map_cases<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}
