//! Kernel-smoothed estimators of a monotone regression function.
//!
//! The smoothed least-squares estimator (SLSE) convolves the isotonic step
//! function with a scaled triweight kernel. On the interior `[h, 1-h]` it
//! reduces to a finite sum over the jumps of the step function,
//!
//! ```text
//! slse(t) = f(0) + sum over jumps (tau, p) of IK_h(t - tau) * p,
//! ```
//!
//! which is exact under the right-continuous step convention. Near the two
//! edges the convolution is badly biased, so the curve is extended by a
//! quadratic Taylor polynomial anchored at `h` (or `1-h`), whose curvature
//! term comes from an oversmoothed pilot bandwidth `h0`.
//!
//! The Nadaraya-Watson estimator is provided as a smooth but not
//! necessarily monotone comparator; near the edges its kernel is replaced
//! by a first-order moment-matching boundary kernel.

use crate::error::{Error, Result};
use crate::isotonic::{fit_lse, Jump, RegressionSample, StepFunction};
use crate::kernel::{boundary_kernel, Bandwidth, BandwidthPlan};

/// Smoothed isotonic fit: the base step function plus the bandwidths used
/// for smoothing (`h`) and for the boundary curvature term (`h0`).
#[derive(Debug, Clone)]
pub struct SlseFit {
    base: StepFunction,
    h: Bandwidth,
    h0: Bandwidth,
    jumps: Vec<Jump>,
}

impl SlseFit {
    pub fn new(base: StepFunction, h: Bandwidth, h0: Bandwidth) -> Self {
        let jumps = base.jumps();
        SlseFit { base, h, h0, jumps }
    }

    /// Fits the LSE and wraps it with the plan's bandwidths.
    pub fn from_sample(sample: &RegressionSample, plan: &BandwidthPlan) -> Self {
        Self::new(fit_lse(sample), plan.h(), plan.h0())
    }

    pub fn base(&self) -> &StepFunction {
        &self.base
    }

    pub fn h(&self) -> Bandwidth {
        self.h
    }

    pub fn h0(&self) -> Bandwidth {
        self.h0
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }
}

fn require_interior(t: f64, h: Bandwidth) -> Result<()> {
    let hv = h.get();
    if t < hv || t > 1.0 - hv {
        Err(Error::BoundaryPoint { t, h: hv })
    } else {
        Ok(())
    }
}

fn jump_sum(jumps: &[Jump], term: impl FnMut(&Jump) -> f64) -> f64 {
    jumps.iter().map(term).sum()
}

/// SLSE at an interior point `t` in `[h, 1-h]`.
pub fn slse_at(fit: &SlseFit, t: f64) -> Result<f64> {
    require_interior(t, fit.h)?;
    let h = fit.h;
    Ok(fit.base.first_value() + jump_sum(&fit.jumps, |j| h.kernel_cdf(t - j.location) * j.size))
}

/// Derivative of the SLSE at an interior point: `sum K_h(t - tau_i) p_i`.
/// Nonnegative, since the kernel is nonnegative and all jumps are positive.
pub fn slse_deriv_at(fit: &SlseFit, t: f64) -> Result<f64> {
    require_interior(t, fit.h)?;
    let h = fit.h;
    Ok(jump_sum(&fit.jumps, |j| h.kernel(t - j.location) * j.size))
}

/// Second derivative of the smoothed fit at `t` in `[h0, 1-h0]`, using the
/// pilot bandwidth: `sum K'_{h0}(t - tau_i) p_i` with `K'_{h0} = h0^-2 K'(./h0)`.
///
/// With `h0` of order `n^(-1/9)` this is a consistent estimate of the
/// curvature of the regression function.
pub fn slse_second_deriv_at(base: &StepFunction, h0: Bandwidth, t: f64) -> Result<f64> {
    require_interior(t, h0)?;
    Ok(base
        .jumps()
        .iter()
        .map(|j| h0.kernel_deriv(t - j.location) * j.size)
        .sum())
}

/// SLSE in the boundary regions `[0, h)` and `(1-h, 1]`, by quadratic
/// Taylor expansion around the nearest interior seam.
///
/// The left expansion is anchored at `h`, the right at `1-h` (which keeps
/// the curve continuous across both seams); the curvature terms are
/// evaluated at the fixed points `h0` and `1-h0`.
pub fn slse_boundary(fit: &SlseFit, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::PointOutOfRange { t });
    }
    let h = fit.h.get();
    let h0 = fit.h0;
    if t < h {
        let d = t - h;
        Ok(slse_at(fit, h)?
            + d * slse_deriv_at(fit, h)?
            + 0.5 * d * d * slse_second_deriv_at(&fit.base, h0, h0.get())?)
    } else if t > 1.0 - h {
        let d = t - (1.0 - h);
        Ok(slse_at(fit, 1.0 - h)?
            + d * slse_deriv_at(fit, 1.0 - h)?
            + 0.5 * d * d * slse_second_deriv_at(&fit.base, h0, 1.0 - h0.get())?)
    } else {
        Err(Error::InteriorPoint { t, h })
    }
}

/// SLSE over a grid in `[0, 1]`, dispatching each point to [`slse_at`] or
/// [`slse_boundary`].
pub fn slse_curve(fit: &SlseFit, grid: &[f64]) -> Result<Vec<f64>> {
    let h = fit.h.get();
    grid.iter()
        .map(|&t| {
            if !(0.0..=1.0).contains(&t) {
                Err(Error::PointOutOfRange { t })
            } else if t < h || t > 1.0 - h {
                slse_boundary(fit, t)
            } else {
                slse_at(fit, t)
            }
        })
        .collect()
}

/// Kernel weight used by the NW estimator at `t`: plain triweight on the
/// interior, boundary-corrected near the edges.
fn nw_weight(t: f64, x: f64, h: f64) -> f64 {
    let u = (t - x) / h;
    if t < h {
        boundary_kernel(u, t / h)
    } else if t > 1.0 - h {
        boundary_kernel(-u, (1.0 - t) / h)
    } else {
        crate::kernel::triweight(u)
    }
}

fn window(sample: &RegressionSample, t: f64, h: f64) -> std::ops::Range<usize> {
    let lo = sample.xs().partition_point(|&x| x <= t - h);
    let hi = sample.xs().partition_point(|&x| x < t + h);
    lo..hi
}

/// Nadaraya-Watson estimator at `t` in `[0, 1]`.
///
/// Interior points use the kernel-weighted average
/// `sum y_i K_h(t - x_i) / sum K_h(t - x_i)`; within one bandwidth of an
/// edge the kernel is replaced by the moment-matching boundary kernel at
/// `rho = t/h` (mirrored at the right edge). Errors when no design point
/// carries kernel mass.
pub fn nw_at(sample: &RegressionSample, h: Bandwidth, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::PointOutOfRange { t });
    }
    let hv = h.get();
    let range = window(sample, t, hv);
    if range.is_empty() {
        return Err(Error::EmptyWindow { t });
    }
    let mut num = 0.0;
    let mut den = 0.0;
    let mut any = false;
    for i in range {
        let x = sample.xs()[i];
        if crate::kernel::triweight((t - x) / hv) > 0.0 {
            any = true;
        }
        let w = sample.weights()[i] * nw_weight(t, x, hv);
        num += w * sample.ys()[i];
        den += w;
    }
    if !any || den == 0.0 {
        return Err(Error::EmptyWindow { t });
    }
    Ok(num / den)
}

/// The squared weight ratio `sum K^2 / (sum K)^2` entering the conditional
/// variance of the NW estimator at `t` (Hall's `beta_t^2`). Lies in `(0, 1]`.
pub fn nw_beta_sq(sample: &RegressionSample, h: Bandwidth, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::PointOutOfRange { t });
    }
    let hv = h.get();
    let range = window(sample, t, hv);
    if range.is_empty() {
        return Err(Error::EmptyWindow { t });
    }
    let mut sq = 0.0;
    let mut sum = 0.0;
    let mut any = false;
    for i in range {
        let x = sample.xs()[i];
        let w = nw_weight(t, x, hv);
        if w != 0.0 {
            any = true;
        }
        sq += sample.weights()[i] * w * w;
        sum += sample.weights()[i] * w;
    }
    if !any || sum == 0.0 {
        return Err(Error::EmptyWindow { t });
    }
    Ok(sq / (sum * sum))
}

/// NW estimator over a grid in `[0, 1]`.
pub fn nw_curve(sample: &RegressionSample, h: Bandwidth, grid: &[f64]) -> Result<Vec<f64>> {
    grid.iter().map(|&t| nw_at(sample, h, t)).collect()
}
