//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers run on the rayon pool; the
//! runtime switch [`set_parallel`] forces the sequential path, which the
//! benches use to compare both modes in one binary. Every helper returns
//! results in index order, so callers see identical output either way.

use std::ops::Range;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::{structural, Result};

static PARALLEL: AtomicBool = AtomicBool::new(cfg!(feature = "parallel"));

/// Enables or disables the parallel path. Without the `parallel` feature
/// this is a no-op and everything runs sequentially.
pub fn set_parallel(on: bool) {
    PARALLEL.store(on && cfg!(feature = "parallel"), Ordering::Relaxed);
}

pub fn is_parallel() -> bool {
    PARALLEL.load(Ordering::Relaxed)
}

/// Caps the worker count of the global pool. Must run before the first
/// parallel call; later calls report an error from rayon.
pub fn configure_threads(n: usize) -> Result<()> {
    if n == 0 {
        return Err(structural("worker count must be positive"));
    }
    if n == 1 {
        set_parallel(false);
        return Ok(());
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| structural(e.to_string()))?;
    Ok(())
}

/// `range.map(f).collect()`, in order.
pub fn map_range<T, F>(range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && range.len() > 1 {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    range.map(f).collect()
}

/// Least index in `range` for which `f` returns `Some`, with its value.
pub fn find_first<T, F>(range: Range<usize>, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && range.len() > 1 {
        use rayon::prelude::*;
        return range
            .into_par_iter()
            .find_map_first(|i| f(i).map(|t| (i, t)));
    }
    range.into_iter().find_map(|i| f(i).map(|t| (i, t)))
}

/// Processes `0..total` in ordered chunks of `chunk` items, handing each
/// chunk's in-order results to `visit`, and stops once `visit` says so.
/// Work inside a chunk runs in parallel; the visitor runs sequentially.
pub fn chunked<T, F, V>(total: u64, chunk: usize, f: F, mut visit: V)
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
    V: FnMut(u64, T) -> bool,
{
    let chunk = chunk.max(1) as u64;
    let mut start = 0u64;
    while start < total {
        let end = (start + chunk).min(total);
        let results = map_range(0..(end - start) as usize, |i| f(start + i as u64));
        for (i, r) in results.into_iter().enumerate() {
            if !visit(start + i as u64, r) {
                return;
            }
        }
        start = end;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordered_results() {
        let v = map_range(0..100, |i| i * i);
        assert_eq!(v[7], 49);
        assert_eq!(
            find_first(0..100, |i| (i % 13 == 12).then_some(i)),
            Some((12, 12))
        );
        let mut seen = Vec::new();
        chunked(
            10,
            3,
            |i| i,
            |i, v| {
                seen.push(v);
                i < 6
            },
        );
        assert_eq!(seen, vec![0, 1, 2, 3, 4, 5, 6]);
    }
}
