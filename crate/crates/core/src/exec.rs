//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) [`Exec::Parallel`] runs on rayon's
//! global pool; without it every call is sequential. Results never depend on
//! scheduling: searches return the lowest matching index and maps preserve
//! order.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    #[cfg(feature = "parallel")]
    fn parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// First (lowest) index in `range` for which `f` returns `Some`.
pub fn find_first<T, F>(exec: Exec, range: Range<u64>, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        return range.into_par_iter().find_map_first(f);
    }
    let _ = exec;
    range.into_iter().find_map(f)
}

/// `f` applied to every index, in index order.
pub fn map_indexed<T, F>(exec: Exec, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// `f` applied to every element of `items`, in order.
pub fn map_slice<'a, S, T, F>(exec: Exec, items: &'a [S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&'a S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_is_lowest_index_in_both_modes() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let hit = find_first(exec, 0..100_000, |i| (i % 7919 == 7918).then_some(i));
            assert_eq!(hit, Some(7918));
        }
    }

    #[test]
    fn map_preserves_order() {
        let seq = map_indexed(Exec::Sequential, 1000, |i| i * i);
        let par = map_indexed(Exec::Parallel, 1000, |i| i * i);
        assert_eq!(seq, par);
    }
}
