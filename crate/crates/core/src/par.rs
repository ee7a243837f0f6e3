//! Data-parallel helpers.
//!
//! With the `parallel` feature the closures run on the rayon pool; without it
//! they run in order on the calling thread. Results are always collected in
//! index order, so downstream reductions see the same sequence either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Evaluates `f(0..n)` and returns the results in index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Maps over a slice, preserving order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Index of the largest value, ties resolved towards the lowest index.
/// NaNs are never selected.
pub fn argmax(values: impl IntoIterator<Item = f64>) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.into_iter().enumerate() {
        if v.is_nan() {
            continue;
        }
        match best {
            Some((_, b)) if v <= b => {}
            _ => best = Some((i, v)),
        }
    }
    best
}

pub const CHUNK: u64 = 1 << 14;

/// Partial sums `Σ_{n=1}^{N} term(n)` at every checkpoint `N`.
///
/// The range is cut into fixed blocks (independent of the thread count),
/// block sums are computed in parallel and accumulated in order, so the
/// result is bit-for-bit identical between serial and parallel builds.
pub fn partial_sums<F>(term: F, checkpoints: &[u64]) -> Vec<f64>
where
    F: Fn(u64) -> f64 + Sync + Send,
{
    let max = checkpoints.iter().copied().max().unwrap_or(0);
    if max == 0 {
        return vec![0.0; checkpoints.len()];
    }
    let mut cuts: Vec<u64> = (0..=max / CHUNK).map(|i| i * CHUNK).collect();
    cuts.extend(checkpoints.iter().copied());
    cuts.push(max);
    cuts.sort_unstable();
    cuts.dedup();
    let segments: Vec<(u64, u64)> = cuts.windows(2).map(|w| (w[0], w[1])).collect();
    let sums = map_slice(&segments, |&(lo, hi)| (lo + 1..=hi).map(&term).sum::<f64>());
    let mut prefix = Vec::with_capacity(cuts.len());
    prefix.push((0u64, 0.0f64));
    let mut acc = 0.0;
    for (&(_, hi), s) in segments.iter().zip(&sums) {
        acc += s;
        prefix.push((hi, acc));
    }
    checkpoints
        .iter()
        .map(|&c| {
            let i = prefix.partition_point(|&(n, _)| n < c);
            prefix[i].1
        })
        .collect()
}
