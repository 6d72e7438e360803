//! Deterministic data-parallel scan primitives.
//!
//! The pair/triple minimizations behind thickness and the distance-landscape
//! exports are embarrassingly parallel. Every reduction here uses the total
//! order on `(value, index)` tuples, so the result is bit-identical whether
//! it is computed sequentially or on a rayon pool — the winner is the
//! smallest value with the lexicographically smallest index as tie-break.
//!
//! With the `parallel` feature (default) the unsuffixed entry points run on
//! rayon; without it they fall back to the `_seq` implementations. The
//! explicit `_seq`/`_par` variants stay available for benchmarks comparing
//! both modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Minimum of `f(i, j)` over ordered pairs `0 <= i < j < n`.
///
/// Returns `(value, (i, j))`; `None` when `n < 2`.
pub fn min_over_pairs_seq<F>(n: usize, f: F) -> Option<(f64, (usize, usize))>
where
    F: Fn(usize, usize) -> f64 + Sync,
{
    let mut best: Option<(f64, (usize, usize))> = None;
    for i in 0..n {
        for j in (i + 1)..n {
            let v = f(i, j);
            best = Some(better_pair(best, (v, (i, j))));
        }
    }
    best
}

/// Parallel version of [`min_over_pairs_seq`] with an identical result.
#[cfg(feature = "parallel")]
pub fn min_over_pairs_par<F>(n: usize, f: F) -> Option<(f64, (usize, usize))>
where
    F: Fn(usize, usize) -> f64 + Sync,
{
    (0..n)
        .into_par_iter()
        .filter_map(|i| {
            let mut best: Option<(f64, (usize, usize))> = None;
            for j in (i + 1)..n {
                let v = f(i, j);
                best = Some(better_pair(best, (v, (i, j))));
            }
            best
        })
        .reduce_with(|a, b| better_pair(Some(a), b))
}

/// Minimum of `f(i, j)` over ordered pairs, parallel when enabled.
pub fn min_over_pairs<F>(n: usize, f: F) -> Option<(f64, (usize, usize))>
where
    F: Fn(usize, usize) -> f64 + Sync,
{
    #[cfg(feature = "parallel")]
    {
        min_over_pairs_par(n, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        min_over_pairs_seq(n, f)
    }
}

/// Minimum of `f(i, j, k)` over `0 <= i < j < k < n`.
pub fn min_over_triples_seq<F>(n: usize, f: F) -> Option<(f64, (usize, usize, usize))>
where
    F: Fn(usize, usize, usize) -> f64 + Sync,
{
    let mut best: Option<(f64, (usize, usize, usize))> = None;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let v = f(i, j, k);
                best = Some(better_triple(best, (v, (i, j, k))));
            }
        }
    }
    best
}

/// Parallel version of [`min_over_triples_seq`] with an identical result.
#[cfg(feature = "parallel")]
pub fn min_over_triples_par<F>(n: usize, f: F) -> Option<(f64, (usize, usize, usize))>
where
    F: Fn(usize, usize, usize) -> f64 + Sync,
{
    (0..n)
        .into_par_iter()
        .filter_map(|i| {
            let mut best: Option<(f64, (usize, usize, usize))> = None;
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let v = f(i, j, k);
                    best = Some(better_triple(best, (v, (i, j, k))));
                }
            }
            best
        })
        .reduce_with(|a, b| better_triple(Some(a), b))
}

/// Minimum of `f(i, j, k)` over ordered triples, parallel when enabled.
pub fn min_over_triples<F>(n: usize, f: F) -> Option<(f64, (usize, usize, usize))>
where
    F: Fn(usize, usize, usize) -> f64 + Sync,
{
    #[cfg(feature = "parallel")]
    {
        min_over_triples_par(n, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        min_over_triples_seq(n, f)
    }
}

/// Maps `row` over `0..n` preserving order.
pub fn map_rows_seq<T, F>(n: usize, row: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    (0..n).map(row).collect()
}

/// Parallel version of [`map_rows_seq`]; output order is preserved.
#[cfg(feature = "parallel")]
pub fn map_rows_par<T, F>(n: usize, row: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(row).collect()
}

/// Maps `row` over `0..n` preserving order, parallel when enabled.
pub fn map_rows<T, F>(n: usize, row: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_rows_par(n, row)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_rows_seq(n, row)
    }
}

fn better_pair(
    best: Option<(f64, (usize, usize))>,
    cand: (f64, (usize, usize)),
) -> (f64, (usize, usize)) {
    match best {
        None => cand,
        Some(b) => {
            let ord = cand
                .0
                .total_cmp(&b.0)
                .then_with(|| cand.1.cmp(&b.1));
            if ord.is_lt() {
                cand
            } else {
                b
            }
        }
    }
}

fn better_triple(
    best: Option<(f64, (usize, usize, usize))>,
    cand: (f64, (usize, usize, usize)),
) -> (f64, (usize, usize, usize)) {
    match best {
        None => cand,
        Some(b) => {
            let ord = cand
                .0
                .total_cmp(&b.0)
                .then_with(|| cand.1.cmp(&b.1));
            if ord.is_lt() {
                cand
            } else {
                b
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_min_matches_naive() {
        let f = |i: usize, j: usize| ((i * 7 + j * 13) % 29) as f64;
        let got = min_over_pairs_seq(20, f).unwrap();
        let mut best = f64::INFINITY;
        let mut at = (0, 0);
        for i in 0..20 {
            for j in (i + 1)..20 {
                let v = f(i, j);
                if v < best {
                    best = v;
                    at = (i, j);
                }
            }
        }
        assert_eq!(got.0, best);
        assert_eq!(got.1, at);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential_bitwise() {
        // Plenty of exact ties; the lexicographic tie-break must make the
        // schedules agree.
        let f = |i: usize, j: usize| ((i + j) % 5) as f64;
        assert_eq!(min_over_pairs_seq(64, f), min_over_pairs_par(64, f));
        let g = |i: usize, j: usize, k: usize| ((i + 2 * j + 3 * k) % 7) as f64;
        assert_eq!(min_over_triples_seq(40, g), min_over_triples_par(40, g));
        let rows_seq = map_rows_seq(100, |i| i * i);
        let rows_par = map_rows_par(100, |i| i * i);
        assert_eq!(rows_seq, rows_par);
    }

    #[test]
    fn empty_scans_yield_none() {
        assert!(min_over_pairs_seq(1, |_, _| 0.0).is_none());
        assert!(min_over_triples_seq(2, |_, _, _| 0.0).is_none());
    }
}
