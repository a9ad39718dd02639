//! Synthetic data generation and Monte-Carlo coverage experiments.
//!
//! Two stock regression functions are provided: the quadratic
//! `x^2 + x/5` (constant curvature) and the logistic
//! `exp(4(x - 1/2)) / (1 + exp(4(x - 1/2)))` (curvature changes sign at
//! the midpoint, where it vanishes). Design points are uniform on `[0, 1]`
//! and the noise is Gaussian.

use rayon::prelude::*;
use serde::Serialize;

use crate::bootstrap::{confidence_band, BandMeta, BootstrapConfig};
use crate::error::{Error, Result};
use crate::isotonic::RegressionSample;
use crate::rng::StreamKey;
use rand::Rng;
use rand_distr::StandardNormal;

/// Regression function of a simulation scenario.
#[derive(Debug, Clone, Copy)]
pub enum Scenario {
    /// `x^2 + x/5`
    Quadratic,
    /// `exp(4(x - 1/2)) / (1 + exp(4(x - 1/2)))`
    Logistic,
    Custom(fn(f64) -> f64),
}

impl Scenario {
    pub fn truth(self, x: f64) -> f64 {
        match self {
            Scenario::Quadratic => x * x + x / 5.0,
            Scenario::Logistic => {
                let e = (4.0 * (x - 0.5)).exp();
                e / (1.0 + e)
            }
            Scenario::Custom(f) => f(x),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Quadratic => "quadratic",
            Scenario::Logistic => "logistic",
            Scenario::Custom(_) => "custom",
        }
    }
}

/// A data-generating configuration: regression function, noise standard
/// deviation and sample size.
#[derive(Debug, Clone, Copy)]
pub struct ScenarioSpec {
    pub scenario: Scenario,
    pub sigma0: f64,
    pub n: usize,
}

impl ScenarioSpec {
    /// `sigma0 = 0` is allowed as a noiseless test mode.
    pub fn new(scenario: Scenario, sigma0: f64, n: usize) -> Result<Self> {
        if !(sigma0 >= 0.0 && sigma0.is_finite()) {
            return Err(Error::InvalidSigma(sigma0));
        }
        if n < 3 {
            return Err(Error::TooFewPoints { needed: 3, got: n });
        }
        Ok(ScenarioSpec {
            scenario,
            sigma0,
            n,
        })
    }
}

/// Draws one sample: sorted uniform design points with Gaussian noise
/// around the scenario's regression function.
pub fn gen_sample(spec: &ScenarioSpec, rng: &mut impl Rng) -> RegressionSample {
    let mut xs: Vec<f64> = (0..spec.n).map(|_| rng.gen::<f64>()).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let pairs: Vec<(f64, f64)> = xs
        .into_iter()
        .map(|x| {
            let z: f64 = rng.sample(StandardNormal);
            (x, spec.scenario.truth(x) + spec.sigma0 * z)
        })
        .collect();
    // Tied design points have probability zero; merging handles the
    // astronomically unlikely exact collision.
    RegressionSample::from_unsorted(pairs).expect("generated sample is valid")
}

/// Empirical coverage of the bootstrap intervals per grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    pub ts: Vec<f64>,
    /// Fraction of repetitions whose interval contained the truth.
    pub coverage: Vec<f64>,
    /// Number of outer Monte-Carlo repetitions (M).
    pub outer: usize,
    pub scenario: String,
    pub sigma0: f64,
    pub band: BandMeta,
}

pub(crate) fn contains(lower: f64, upper: f64, value: f64) -> bool {
    lower <= value && value <= upper
}

/// Runs `outer` independent repetitions of: generate a sample, build the
/// band, record pointwise containment of the true regression value.
///
/// Repetition `m` generates data from the substream keyed `(seed, m, 0)`
/// and hands the bootstrap the derived seed `(seed, m, 1)`, so the whole
/// experiment is reproducible and schedule-invariant.
pub fn coverage_experiment(
    spec: &ScenarioSpec,
    config: &BootstrapConfig,
    ts: &[f64],
    outer: usize,
    seed: u64,
) -> Result<CoverageReport> {
    if outer == 0 {
        return Err(Error::EmptyInput);
    }
    config.validate()?;
    let root = StreamKey::new(seed);
    let hit_rows: Vec<Vec<u32>> = (0..outer)
        .into_par_iter()
        .map(|m| {
            let key = root.child(m as u64);
            let mut data_rng = key.child(0).rng();
            let sample = gen_sample(spec, &mut data_rng);
            let mut cfg = *config;
            cfg.seed = key.child(1).as_seed();
            let band = confidence_band(&sample, &cfg, ts)?;
            Ok(ts
                .iter()
                .enumerate()
                .map(|(i, &t)| {
                    contains(band.lower[i], band.upper[i], spec.scenario.truth(t)) as u32
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut hits = vec![0u32; ts.len()];
    for row in &hit_rows {
        for (h, r) in hits.iter_mut().zip(row) {
            *h += r;
        }
    }
    let coverage = hits.iter().map(|&h| h as f64 / outer as f64).collect();
    Ok(CoverageReport {
        ts: ts.to_vec(),
        coverage,
        outer,
        scenario: spec.scenario.name().to_string(),
        sigma0: spec.sigma0,
        band: BandMeta::from(config),
    })
}
