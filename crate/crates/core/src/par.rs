//! Data-parallel helpers.
//!
//! With the `parallel` feature, work fans out over the current rayon pool.
//! Without it, or inside [`sequential`], everything runs in order on the
//! calling thread. Results are identical in both modes.

use std::cell::Cell;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with every helper in this module pinned to the calling thread.
pub fn sequential<R>(f: impl FnOnce() -> R) -> R {
    let prev = FORCE_SEQUENTIAL.with(|c| c.replace(true));
    let out = f();
    FORCE_SEQUENTIAL.with(|c| c.set(prev));
    out
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.with(Cell::get)
}

/// Order-preserving map.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

pub fn all<T, F>(items: &[T], f: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return items.par_iter().all(f);
    }
    items.iter().all(f)
}

/// Minimum of `f` over `items`, `None` when every call yields `None`.
pub fn min<T, F>(items: &[T], f: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> Option<usize> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return items.par_iter().filter_map(f).min();
    }
    items.iter().filter_map(f).min()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let par = map(&xs, |x| x * x % 17);
        let seq = sequential(|| map(&xs, |x| x * x % 17));
        assert_eq!(par, seq);
        assert!(sequential(|| !is_parallel()));
        assert_eq!(min(&xs, |&x| (x > 10).then_some(x as usize)), Some(11));
        assert!(all(&xs, |&x| x < 1000));
    }
}
