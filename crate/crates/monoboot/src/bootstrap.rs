//! Residual bootstrap confidence intervals for the smoothed estimators.
//!
//! The design points stay fixed. Residuals are taken against an
//! *oversmoothed* pilot estimate (bandwidth `h0` of order `n^(-1/9)`),
//! centered, and resampled with replacement to form bootstrap responses
//! `y*_i = pilot(x_i) + e*_i`. For each replication the estimator is refit
//! at the main bandwidth `h` and the difference to the pilot curve is
//! recorded; pointwise intervals come from order-statistic quantiles of
//! those differences. Because the pilot oversmooths, the bootstrap
//! differences carry the same smoothing bias as the estimator itself, so
//! the bias cancels in the interval without undersmoothing or explicit
//! bias estimation.
//!
//! Studentized variants divide each replication's difference by a
//! per-replication scale: the centered resampled-residual standard
//! deviation for the SLSE, and either the Hall-Kay difference estimator or
//! the residual estimate for Nadaraya-Watson.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimators::{nw_curve, slse_curve, SlseFit};
use crate::isotonic::{fit_lse, RegressionSample};
use crate::kernel::BandwidthPlan;
use crate::rng::{resample_indices, StreamKey};

/// Which point estimator drives the pilot, the refits and the band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorKind {
    Slse,
    Nw,
}

/// Scale estimate used when Studentizing Nadaraya-Watson intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NwSigma {
    HallKay,
    Residual,
}

/// Centered residuals against the pilot estimate, plus the pilot values at
/// the design points.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualSet {
    residuals: Vec<f64>,
    pilot_values: Vec<f64>,
}

impl ResidualSet {
    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn pilot_values(&self) -> &[f64] {
        &self.pilot_values
    }
}

/// Configuration of one bootstrap interval construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BootstrapConfig {
    /// Number of bootstrap replications (B).
    pub replications: usize,
    pub seed: u64,
    pub estimator: EstimatorKind,
    pub studentized: bool,
    /// Scale estimator for Studentized NW intervals; ignored otherwise.
    pub nw_sigma: NwSigma,
    /// Two-sided miscoverage level; 0.05 gives 95% intervals.
    pub alpha: f64,
    pub plan: BandwidthPlan,
}

impl BootstrapConfig {
    /// Defaults: B = 1000, alpha = 0.05, non-Studentized, Hall-Kay scale.
    pub fn new(estimator: EstimatorKind, plan: BandwidthPlan, seed: u64) -> Self {
        BootstrapConfig {
            replications: 1000,
            seed,
            estimator,
            studentized: false,
            nw_sigma: NwSigma::HallKay,
            alpha: 0.05,
            plan,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications < 2 {
            return Err(Error::InvalidReplications(self.replications));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidAlpha(self.alpha));
        }
        Ok(())
    }
}

/// Everything needed to replay a band: written into every output file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandMeta {
    pub estimator: EstimatorKind,
    pub studentized: bool,
    pub nw_sigma: NwSigma,
    pub h: f64,
    pub h0: f64,
    pub c: f64,
    pub c0: f64,
    pub n: usize,
    pub replications: usize,
    pub alpha: f64,
    pub seed: u64,
}

impl From<&BootstrapConfig> for BandMeta {
    fn from(config: &BootstrapConfig) -> Self {
        BandMeta {
            estimator: config.estimator,
            studentized: config.studentized,
            nw_sigma: config.nw_sigma,
            h: config.plan.h().get(),
            h0: config.plan.h0().get(),
            c: config.plan.c(),
            c0: config.plan.c0(),
            n: config.plan.n(),
            replications: config.replications,
            alpha: config.alpha,
            seed: config.seed,
        }
    }
}

/// Pointwise confidence band: estimate and interval per grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfidenceBand {
    pub ts: Vec<f64>,
    pub estimate: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub meta: BandMeta,
}

fn neumaier_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Residuals of the responses against a pilot curve evaluated at the design
/// points, centered by subtracting their (compensated) mean.
pub fn make_residuals(sample: &RegressionSample, pilot_at_xs: &[f64]) -> Result<ResidualSet> {
    if pilot_at_xs.len() != sample.len() {
        return Err(Error::LengthMismatch {
            xs: sample.len(),
            ys: pilot_at_xs.len(),
        });
    }
    let raw: Vec<f64> = sample
        .ys()
        .iter()
        .zip(pilot_at_xs)
        .map(|(y, m)| y - m)
        .collect();
    let mean = neumaier_sum(&raw) / raw.len() as f64;
    let residuals = raw.iter().map(|e| e - mean).collect();
    Ok(ResidualSet {
        residuals,
        pilot_values: pilot_at_xs.to_vec(),
    })
}

/// One bootstrap sample: the design points of `sample` with responses
/// `pilot(x_i) + e*_i`, the `e*_i` drawn uniformly with replacement from
/// the centered residuals.
pub fn draw_bootstrap_sample(
    sample: &RegressionSample,
    rs: &ResidualSet,
    rng: &mut impl rand::Rng,
) -> RegressionSample {
    let idx = resample_indices(sample.len(), rng);
    let ys = idx
        .iter()
        .zip(&rs.pilot_values)
        .map(|(&i, m)| m + rs.residuals[i])
        .collect();
    sample
        .with_responses(ys)
        .expect("resampled responses are finite")
}

/// Residual-based scale: the square root of `n^-1 sum e_i^2` over the
/// centered residuals.
pub fn sigma_residual(rs: &ResidualSet) -> f64 {
    let n = rs.residuals.len() as f64;
    (rs.residuals.iter().map(|e| e * e).sum::<f64>() / n).sqrt()
}

fn sigma_recentered(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = neumaier_sum(values) / n;
    (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n).sqrt()
}

/// Hall-Kay difference estimator of the noise standard deviation from
/// responses ordered by x.
///
/// Uses the optimal second-order difference weights
/// `(d0, d1, d2) = ((sqrt 5 + 1)/4, -1/2, -(sqrt 5 - 1)/4)` of
/// Hall, Kay and Titterington (1990); they sum to zero (constants are
/// annihilated) and their squares sum to one (no rescaling needed).
pub fn sigma_hall_kay(ys_in_x_order: &[f64]) -> Result<f64> {
    let n = ys_in_x_order.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let s5 = 5f64.sqrt();
    let d = [(s5 + 1.0) / 4.0, -0.5, -(s5 - 1.0) / 4.0];
    let mut acc = 0.0;
    for i in 0..n - 2 {
        let v = d[0] * ys_in_x_order[i] + d[1] * ys_in_x_order[i + 1] + d[2] * ys_in_x_order[i + 2];
        acc += v * v;
    }
    Ok((acc / (n - 2) as f64).sqrt())
}

struct Pipeline {
    pilot_at_xs: Vec<f64>,
    pilot_at_ts: Vec<f64>,
    residuals: ResidualSet,
}

fn pilot_pipeline(
    sample: &RegressionSample,
    config: &BootstrapConfig,
    ts: &[f64],
) -> Result<Pipeline> {
    let plan = &config.plan;
    let (pilot_at_xs, pilot_at_ts) = match config.estimator {
        EstimatorKind::Slse => {
            // The pilot's own boundary correction uses its own bandwidth
            // for the curvature term.
            let fit = SlseFit::new(fit_lse(sample), plan.h0(), plan.h0());
            (slse_curve(&fit, sample.xs())?, slse_curve(&fit, ts)?)
        }
        EstimatorKind::Nw => (
            nw_curve(sample, plan.h0(), sample.xs())?,
            nw_curve(sample, plan.h0(), ts)?,
        ),
    };
    let residuals = make_residuals(sample, &pilot_at_xs)?;
    Ok(Pipeline {
        pilot_at_xs,
        pilot_at_ts,
        residuals,
    })
}

fn replication_row(
    sample: &RegressionSample,
    config: &BootstrapConfig,
    ts: &[f64],
    pipeline: &Pipeline,
    key: StreamKey,
) -> Result<Vec<f64>> {
    let mut rng = key.rng();
    let bs = draw_bootstrap_sample(sample, &pipeline.residuals, &mut rng);
    let est = match config.estimator {
        EstimatorKind::Slse => {
            let fit = SlseFit::new(fit_lse(&bs), config.plan.h(), config.plan.h0());
            slse_curve(&fit, ts)?
        }
        EstimatorKind::Nw => nw_curve(&bs, config.plan.h(), ts)?,
    };
    let mut row: Vec<f64> = est
        .iter()
        .zip(&pipeline.pilot_at_ts)
        .map(|(e, p)| e - p)
        .collect();
    if config.studentized {
        let scale = match (config.estimator, config.nw_sigma) {
            (EstimatorKind::Slse, _) | (EstimatorKind::Nw, NwSigma::Residual) => {
                // The drawn residuals are exactly y* - pilot(x).
                let drawn: Vec<f64> = bs
                    .ys()
                    .iter()
                    .zip(&pipeline.pilot_at_xs)
                    .map(|(y, m)| y - m)
                    .collect();
                sigma_recentered(&drawn)
            }
            (EstimatorKind::Nw, NwSigma::HallKay) => sigma_hall_kay(bs.ys())?,
        };
        if scale <= 0.0 {
            return Err(Error::DegenerateScale);
        }
        for v in &mut row {
            *v /= scale;
        }
    }
    Ok(row)
}

fn diff_rows(
    sample: &RegressionSample,
    config: &BootstrapConfig,
    ts: &[f64],
    pipeline: &Pipeline,
    root: StreamKey,
) -> Result<Vec<Vec<f64>>> {
    (0..config.replications)
        .into_par_iter()
        .map(|b| replication_row(sample, config, ts, pipeline, root.child(b as u64)))
        .collect()
}

pub(crate) fn bootstrap_diffs_keyed(
    sample: &RegressionSample,
    config: &BootstrapConfig,
    ts: &[f64],
    root: StreamKey,
) -> Result<Vec<Vec<f64>>> {
    config.validate()?;
    let pipeline = pilot_pipeline(sample, config, ts)?;
    diff_rows(sample, config, ts, &pipeline, root)
}

/// The `B x |ts|` matrix of bootstrap differences
/// `refit_h(t) - pilot_h0(t)`, Studentized per replication when requested.
///
/// Replication `b` draws from the substream keyed `(seed, b)`, so the
/// matrix is reproducible bit for bit and independent of thread count.
pub fn bootstrap_diffs(
    sample: &RegressionSample,
    config: &BootstrapConfig,
    ts: &[f64],
) -> Result<Vec<Vec<f64>>> {
    bootstrap_diffs_keyed(sample, config, ts, StreamKey::new(config.seed))
}

/// Percentile-type interval from one column of bootstrap differences.
///
/// Quantiles are the order statistics `x_(ceil(q B))` of the sorted
/// differences; the interval is
/// `(estimate - Q_{1-alpha/2} * scale, estimate - Q_{alpha/2} * scale)`.
/// `scale` is 1 for plain intervals and the outer sigma estimate for
/// Studentized ones.
pub fn percentile_ci(diffs: &[f64], estimate: f64, alpha: f64, scale: f64) -> Result<(f64, f64)> {
    if diffs.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if scale.is_nan() || scale <= 0.0 {
        return Err(Error::NonPositiveScale(scale));
    }
    let mut sorted = diffs.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let b = sorted.len();
    let order_stat = |q: f64| {
        let rank = (q * b as f64).ceil() as usize;
        sorted[rank.clamp(1, b) - 1]
    };
    let q_lo = order_stat(alpha / 2.0);
    let q_hi = order_stat(1.0 - alpha / 2.0);
    Ok((estimate - q_hi * scale, estimate - q_lo * scale))
}

/// Full pipeline: pilot fit, residuals, point estimates at the main
/// bandwidth, bootstrap differences and pointwise intervals.
pub fn confidence_band(
    sample: &RegressionSample,
    config: &BootstrapConfig,
    ts: &[f64],
) -> Result<ConfidenceBand> {
    config.validate()?;
    let estimate = match config.estimator {
        EstimatorKind::Slse => {
            let fit = SlseFit::from_sample(sample, &config.plan);
            slse_curve(&fit, ts)?
        }
        EstimatorKind::Nw => nw_curve(sample, config.plan.h(), ts)?,
    };
    let pipeline = pilot_pipeline(sample, config, ts)?;
    let diffs = diff_rows(sample, config, ts, &pipeline, StreamKey::new(config.seed))?;
    let scale = if config.studentized {
        let s = match (config.estimator, config.nw_sigma) {
            (EstimatorKind::Slse, _) | (EstimatorKind::Nw, NwSigma::Residual) => {
                sigma_residual(&pipeline.residuals)
            }
            (EstimatorKind::Nw, NwSigma::HallKay) => sigma_hall_kay(sample.ys())?,
        };
        if s <= 0.0 {
            return Err(Error::DegenerateScale);
        }
        s
    } else {
        1.0
    };
    let mut lower = Vec::with_capacity(ts.len());
    let mut upper = Vec::with_capacity(ts.len());
    let mut column = vec![0.0; config.replications];
    for (i, &est) in estimate.iter().enumerate() {
        for (b, row) in diffs.iter().enumerate() {
            column[b] = row[i];
        }
        let (lo, hi) = percentile_ci(&column, est, config.alpha, scale)?;
        lower.push(lo);
        upper.push(hi);
    }
    Ok(ConfidenceBand {
        ts: ts.to_vec(),
        estimate,
        lower,
        upper,
        meta: BandMeta::from(config),
    })
}
