//! Independent oracles shared by the integration tests. Nothing here may
//! call the code paths it is used to check.

#![allow(dead_code)]
#![allow(clippy::too_many_arguments)]

use monoboot::{RegressionSample, StepFunction, StreamKey};
use rand::Rng;

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
                + recurse(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 48)
}

/// Quadrature split at interior breakpoints (for piecewise integrands).
pub fn piecewise_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, breaks: &[f64], tol: f64) -> f64 {
    let mut cuts: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|&x| x > a && x < b))
        .chain(std::iter::once(b))
        .collect();
    cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    cuts.windows(2)
        .map(|w| adaptive_simpson(f, w[0], w[1], tol / (cuts.len() - 1) as f64))
        .sum()
}

/// Brute-force isotonic fit: enumerate all 2^(n-1) consecutive-block
/// partitions, fit each block its weighted mean, keep fits whose block
/// means are nondecreasing, and return the one with minimal weighted SSE.
pub fn brute_force_isotonic(ys: &[f64], weights: &[f64]) -> (Vec<f64>, f64) {
    let n = ys.len();
    assert!((1..=16).contains(&n), "enumeration only sane for small n");
    let mut best: Option<(Vec<f64>, f64)> = None;
    // Bit i of `mask` set means a block boundary between i and i+1.
    for mask in 0u32..(1 << (n - 1)) {
        let mut fitted = Vec::with_capacity(n);
        let mut start = 0usize;
        let mut prev_mean = f64::NEG_INFINITY;
        let mut monotone = true;
        for end in 0..n {
            if end + 1 == n || mask & (1 << end) != 0 {
                let mut wy = 0.0;
                let mut w = 0.0;
                for i in start..=end {
                    wy += weights[i] * ys[i];
                    w += weights[i];
                }
                let mean = wy / w;
                if mean < prev_mean {
                    monotone = false;
                    break;
                }
                prev_mean = mean;
                for _ in start..=end {
                    fitted.push(mean);
                }
                start = end + 1;
            }
        }
        if !monotone {
            continue;
        }
        let sse: f64 = fitted
            .iter()
            .zip(ys)
            .zip(weights)
            .map(|((f, y), w)| w * (y - f) * (y - f))
            .sum();
        if best.as_ref().is_none_or(|(_, s)| sse < *s) {
            best = Some((fitted, sse));
        }
    }
    best.expect("the all-pooled partition is always monotone")
}

pub fn weighted_sse(sample: &RegressionSample, fitted: &[f64]) -> f64 {
    sample
        .ys()
        .iter()
        .zip(fitted)
        .zip(sample.weights())
        .map(|((y, f), w)| w * (y - f) * (y - f))
        .sum()
}

/// Central finite difference of `f` at `x`.
pub fn central_diff(f: &dyn Fn(f64) -> f64, x: f64, step: f64) -> f64 {
    (f(x + step) - f(x - step)) / (2.0 * step)
}

/// Second central finite difference of `f` at `x`.
pub fn second_central_diff(f: &dyn Fn(f64) -> f64, x: f64, step: f64) -> f64 {
    (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step)
}

/// Random nondecreasing step function with `jumps` jumps inside (lo, hi).
pub fn random_step(rng: &mut impl Rng, jumps: usize, lo: f64, hi: f64) -> StepFunction {
    let mut knots: Vec<f64> = (0..jumps.max(1))
        .map(|_| lo + (hi - lo) * rng.gen::<f64>())
        .collect();
    knots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    knots.dedup();
    let mut value = rng.gen::<f64>() * 2.0 - 1.0;
    let values: Vec<f64> = knots
        .iter()
        .map(|_| {
            value += rng.gen::<f64>();
            value
        })
        .collect();
    StepFunction::new(knots, values).unwrap()
}

pub fn rng_for(test: u64) -> rand_chacha::ChaCha8Rng {
    StreamKey::new(0xeb0c).child(test).rng()
}
