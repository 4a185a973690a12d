//! Composite Simpson quadrature on uniform grids.
//!
//! All expectations in this crate are deterministic quadratures; nothing is
//! estimated by sampling. The composite 1/3 rule handles an even number of
//! subintervals; an odd count gets a 3/8 rule on the last three subintervals
//! so that the scheme stays fourth order for any grid length >= 4.

use alloc::vec;
use alloc::vec::Vec;

/// Evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    debug_assert!(n >= 2);
    let h = (hi - lo) / (n - 1) as f64;
    let mut pts = Vec::with_capacity(n);
    for i in 0..n {
        pts.push(lo + i as f64 * h);
    }
    // Pin the endpoint so windows are closed exactly.
    pts[n - 1] = hi;
    pts
}

/// Simpson weights for `n` uniformly spaced points with spacing `h`.
///
/// `sum(w[i] * f(x[i]))` approximates the integral of `f` over the grid.
/// Exact for cubics regardless of the parity of `n - 1`.
pub fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    assert!(n >= 2, "need at least two grid points");
    let mut w = vec![0.0; n];
    let intervals = n - 1;
    if intervals == 1 {
        w[0] = 0.5 * h;
        w[1] = 0.5 * h;
        return w;
    }
    if intervals == 2 {
        fill_third_rule(&mut w, 0, 2, h);
        return w;
    }
    if intervals % 2 == 0 {
        fill_third_rule(&mut w, 0, intervals, h);
    } else {
        // 1/3 rule over the leading even stretch, 3/8 rule over the tail.
        let k = intervals - 3;
        if k > 0 {
            fill_third_rule(&mut w, 0, k, h);
        }
        w[k] += 3.0 * h / 8.0;
        w[k + 1] += 9.0 * h / 8.0;
        w[k + 2] += 9.0 * h / 8.0;
        w[k + 3] += 3.0 * h / 8.0;
    }
    w
}

fn fill_third_rule(w: &mut [f64], start: usize, intervals: usize, h: f64) {
    debug_assert!(intervals % 2 == 0);
    w[start] += h / 3.0;
    w[start + intervals] += h / 3.0;
    for i in 1..intervals {
        w[start + i] += if i % 2 == 1 { 4.0 * h / 3.0 } else { 2.0 * h / 3.0 };
    }
}

/// Integrate `f` over `[lo, hi]` with `intervals + 1` evaluations.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, intervals: usize) -> f64 {
    let n = intervals + 1;
    let pts = linspace(lo, hi, n);
    let w = simpson_weights(n, (hi - lo) / intervals as f64);
    let mut acc = 0.0;
    for i in 0..n {
        acc += w[i] * f(pts[i]);
    }
    acc
}

/// Weighted dot product `sum(w[i] * v[i])`.
pub fn weighted_sum(w: &[f64], v: &[f64]) -> f64 {
    debug_assert_eq!(w.len(), v.len());
    let mut acc = 0.0;
    for i in 0..w.len() {
        acc += w[i] * v[i];
    }
    acc
}
