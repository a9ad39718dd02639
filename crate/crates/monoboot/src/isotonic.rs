//! Monotone least squares via the cumulative-sum diagram.
//!
//! The least-squares estimator (LSE) under a nondecreasing constraint is
//! the left-continuous slope of the greatest convex minorant of the cusum
//! diagram `(0,0), (i, y_1 + ... + y_i)`. We compute it with the weighted
//! pool-adjacent-violators algorithm, which produces the same block-mean
//! solution in linear time.

use crate::error::{Error, Result};

/// Sorted regression data on `[0, 1]`.
///
/// Design points are strictly increasing with one response each. When raw
/// data contain tied x-values, [`RegressionSample::from_unsorted`] merges
/// each tied group into a single point carrying the mean response and an
/// integer weight, which preserves the least-squares objective exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionSample {
    xs: Vec<f64>,
    ys: Vec<f64>,
    weights: Vec<f64>,
}

impl RegressionSample {
    /// Builds a sample from already sorted, tie-free data with unit weights.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        let weights = vec![1.0; xs.len()];
        Self::with_weights(xs, ys, weights)
    }

    /// Builds a sample with explicit multiplicities (from tie merging).
    pub fn with_weights(xs: Vec<f64>, ys: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::EmptyInput);
        }
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch {
                xs: xs.len(),
                ys: ys.len(),
            });
        }
        if xs.len() != weights.len() {
            return Err(Error::LengthMismatch {
                xs: xs.len(),
                ys: weights.len(),
            });
        }
        for (i, (&x, &y)) in xs.iter().zip(&ys).enumerate() {
            if !x.is_finite() || !y.is_finite() || !weights[i].is_finite() {
                return Err(Error::NonFinite { index: i });
            }
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::DesignOutOfRange { index: i, value: x });
            }
            if i > 0 && x <= xs[i - 1] {
                return Err(Error::UnsortedDesign { index: i });
            }
        }
        Ok(RegressionSample { xs, ys, weights })
    }

    /// Sorts raw pairs by x and merges tied groups (mean response, integer
    /// weight) before construction.
    pub fn from_unsorted(mut pairs: Vec<(f64, f64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (i, &(x, y)) in pairs.iter().enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::NonFinite { index: i });
            }
        }
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut xs = Vec::with_capacity(pairs.len());
        let mut ys = Vec::with_capacity(pairs.len());
        let mut weights = Vec::with_capacity(pairs.len());
        let mut i = 0;
        while i < pairs.len() {
            let x = pairs[i].0;
            let mut sum = 0.0;
            let mut count = 0usize;
            while i < pairs.len() && pairs[i].0 == x {
                sum += pairs[i].1;
                count += 1;
                i += 1;
            }
            xs.push(x);
            ys.push(sum / count as f64);
            weights.push(count as f64);
        }
        Self::with_weights(xs, ys, weights)
    }

    /// Same design points and weights, new responses. Used when resampling
    /// keeps the x-values fixed.
    pub fn with_responses(&self, ys: Vec<f64>) -> Result<Self> {
        Self::with_weights(self.xs.clone(), ys, self.weights.clone())
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    /// Always false: construction rejects empty samples.
    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// A jump of a step function: location `tau` and positive size `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub location: f64,
    pub size: f64,
}

/// Right-continuous nondecreasing step function with flat extension
/// outside its knot range.
///
/// The value at `x` is the value attached to the last knot `<= x`; below
/// the first knot the first value applies. A fitted LSE jumps exactly at
/// the data point where the fitted level changes.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    knots: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::EmptyInput);
        }
        if knots.len() != values.len() {
            return Err(Error::LengthMismatch {
                xs: knots.len(),
                ys: values.len(),
            });
        }
        for i in 0..knots.len() {
            if !knots[i].is_finite() || !values[i].is_finite() {
                return Err(Error::NonFinite { index: i });
            }
            if i > 0 {
                if knots[i] <= knots[i - 1] {
                    return Err(Error::UnsortedDesign { index: i });
                }
                if values[i] < values[i - 1] {
                    return Err(Error::DecreasingValues { index: i });
                }
            }
        }
        Ok(StepFunction { knots, values })
    }

    /// Right-continuous evaluation with flat extension.
    pub fn eval(&self, x: f64) -> f64 {
        let idx = self.knots.partition_point(|&k| k <= x);
        if idx == 0 {
            self.values[0]
        } else {
            self.values[idx - 1]
        }
    }

    /// Jump decomposition: positions where the value strictly increases,
    /// with their increments. Sizes are positive and sum to the total rise.
    pub fn jumps(&self) -> Vec<Jump> {
        let mut out = Vec::new();
        for i in 1..self.values.len() {
            let size = self.values[i] - self.values[i - 1];
            if size > 0.0 {
                out.push(Jump {
                    location: self.knots[i],
                    size,
                });
            }
        }
        out
    }

    pub fn first_value(&self) -> f64 {
        self.values[0]
    }

    pub fn last_value(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Fits the monotone least-squares estimator.
///
/// Returns the minimizer of `sum w_i (y_i - f(x_i))^2` over nondecreasing
/// `f`, as a step function with knots at the sample design points. Fitted
/// values are weighted means over the pooled blocks.
pub fn fit_lse(sample: &RegressionSample) -> StepFunction {
    let n = sample.len();
    // Block stack: each entry holds (sum of w*y, sum of w, number of points).
    let mut wy: Vec<f64> = Vec::with_capacity(n);
    let mut w: Vec<f64> = Vec::with_capacity(n);
    let mut count: Vec<usize> = Vec::with_capacity(n);
    let mut level: Vec<f64> = Vec::with_capacity(n);

    for i in 0..n {
        wy.push(sample.weights[i] * sample.ys[i]);
        w.push(sample.weights[i]);
        count.push(1);
        level.push(sample.ys[i]);
        while level.len() > 1 && level[level.len() - 2] > level[level.len() - 1] {
            let k = level.len() - 1;
            wy[k - 1] += wy[k];
            w[k - 1] += w[k];
            count[k - 1] += count[k];
            level[k - 1] = wy[k - 1] / w[k - 1];
            wy.pop();
            w.pop();
            count.pop();
            level.pop();
        }
    }

    let mut values = Vec::with_capacity(n);
    for (lv, c) in level.iter().zip(&count) {
        for _ in 0..*c {
            values.push(*lv);
        }
    }
    StepFunction {
        knots: sample.xs.clone(),
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(xs: &[f64], ys: &[f64]) -> RegressionSample {
        RegressionSample::new(xs.to_vec(), ys.to_vec()).unwrap()
    }

    #[test]
    fn monotone_input_is_unchanged() {
        let s = sample(&[0.2, 0.5, 0.8], &[1.0, 1.0, 1.0]);
        let f = fit_lse(&s);
        assert_eq!(f.values(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn two_point_violation_pools_to_mean() {
        let s = sample(&[0.25, 0.75], &[3.0, 1.0]);
        let f = fit_lse(&s);
        assert_eq!(f.values(), &[2.0, 2.0]);
    }

    #[test]
    fn classic_four_point_case() {
        let s = sample(&[0.2, 0.4, 0.6, 0.8], &[1.0, 3.0, 2.0, 4.0]);
        let f = fit_lse(&s);
        assert_eq!(f.values(), &[1.0, 2.5, 2.5, 4.0]);
    }

    #[test]
    fn step_eval_is_right_continuous_with_flat_extension() {
        let f = StepFunction::new(vec![0.2, 0.6], vec![1.0, 2.0]).unwrap();
        assert_eq!(f.eval(0.6), 2.0);
        assert_eq!(f.eval(0.1), 1.0);
        assert_eq!(f.eval(0.59), 1.0);
        assert_eq!(f.eval(0.95), 2.0);
        let constant = StepFunction::new(vec![0.5], vec![5.0]).unwrap();
        assert_eq!(constant.eval(0.3), 5.0);
    }

    #[test]
    fn jumps_of_constant_fit_are_empty() {
        let f = StepFunction::new(vec![0.1, 0.9], vec![2.0, 2.0]).unwrap();
        assert!(f.jumps().is_empty());
    }

    #[test]
    fn jump_decomposition_by_differencing() {
        let f = StepFunction::new(vec![0.2, 0.4, 0.6, 0.8], vec![1.0, 2.5, 2.5, 4.0]).unwrap();
        let jumps = f.jumps();
        assert_eq!(jumps.len(), 2);
        assert_eq!(
            jumps[0],
            Jump {
                location: 0.4,
                size: 1.5
            }
        );
        assert_eq!(
            jumps[1],
            Jump {
                location: 0.8,
                size: 1.5
            }
        );
        let total: f64 = jumps.iter().map(|j| j.size).sum();
        assert!((total - (f.last_value() - f.first_value())).abs() < 1e-15);
    }

    #[test]
    fn tie_merging_preserves_objective() {
        let raw = vec![(0.3, 1.0), (0.3, 3.0), (0.1, 5.0), (0.7, 0.0)];
        let s = RegressionSample::from_unsorted(raw).unwrap();
        assert_eq!(s.xs(), &[0.1, 0.3, 0.7]);
        assert_eq!(s.ys(), &[5.0, 2.0, 0.0]);
        assert_eq!(s.weights(), &[1.0, 2.0, 1.0]);
        // Weighted fit equals the raw-data isotonic fit: pooling everything
        // gives the grand mean (5 + 1 + 3 + 0)/4.
        let f = fit_lse(&s);
        assert_eq!(f.values(), &[2.25, 2.25, 2.25]);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(
            RegressionSample::new(vec![], vec![]).unwrap_err(),
            Error::EmptyInput
        );
        assert!(matches!(
            RegressionSample::new(vec![0.1, 0.1], vec![1.0, 2.0]).unwrap_err(),
            Error::UnsortedDesign { index: 1 }
        ));
        assert!(matches!(
            RegressionSample::new(vec![0.1, 1.5], vec![1.0, 2.0]).unwrap_err(),
            Error::DesignOutOfRange { index: 1, .. }
        ));
        assert!(matches!(
            RegressionSample::new(vec![0.1], vec![f64::NAN]).unwrap_err(),
            Error::NonFinite { index: 0 }
        ));
        assert!(matches!(
            StepFunction::new(vec![0.1, 0.2], vec![2.0, 1.0]).unwrap_err(),
            Error::DecreasingValues { index: 1 }
        ));
    }

    #[test]
    fn idempotence_on_small_case() {
        let s = sample(&[0.1, 0.3, 0.5, 0.7, 0.9], &[0.4, -0.2, 0.9, 0.9, 2.0]);
        let f = fit_lse(&s);
        let refit = fit_lse(&s.with_responses(f.values().to_vec()).unwrap());
        assert_eq!(refit.values(), f.values());
    }
}
