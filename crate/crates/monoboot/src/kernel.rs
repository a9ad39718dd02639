//! The triweight kernel, its derivative and integral, scaled versions,
//! and the moment-matching boundary kernel.
//!
//! All smoothing in this crate uses the triweight kernel
//! `K(u) = (35/32)(1 - u^2)^3` on `[-1, 1]`. It is symmetric, twice
//! continuously differentiable and integrates to one; its second moment is
//! `1/9` and its roughness `∫K²` is `350/429`.

use crate::error::{Error, Result};
use serde::Serialize;

/// Triweight kernel `(35/32)(1 - u^2)^3` on `[-1, 1]`, zero outside.
pub fn triweight(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        return 0.0;
    }
    let s = 1.0 - u * u;
    35.0 / 32.0 * s * s * s
}

/// Derivative of the triweight kernel: `-(105/16) u (1 - u^2)^2` on `[-1, 1]`.
pub fn triweight_prime(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        return 0.0;
    }
    let s = 1.0 - u * u;
    -(105.0 / 16.0) * u * s * s
}

/// Integral of the triweight kernel over `(-inf, y]`.
///
/// Closed form `1/2 + (35/32)(y - y^3 + (3/5)y^5 - (1/7)y^7)` on `[-1, 1]`,
/// clamped to 0 below and 1 above. Nondecreasing in `y`.
pub fn triweight_cdf(y: f64) -> f64 {
    if y <= -1.0 {
        return 0.0;
    }
    if y >= 1.0 {
        return 1.0;
    }
    let y2 = y * y;
    let poly = y * (1.0 + y2 * (-1.0 + y2 * (0.6 - y2 / 7.0)));
    0.5 + 35.0 / 32.0 * poly
}

/// A kernel bandwidth, constrained to `(0, 0.5)` so that the interior
/// `[h, 1-h]` is nonempty and the two boundary regions do not overlap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Bandwidth(f64);

impl Bandwidth {
    pub fn new(h: f64) -> Result<Self> {
        if h.is_finite() && h > 0.0 && h < 0.5 {
            Ok(Bandwidth(h))
        } else {
            Err(Error::InvalidBandwidth { h })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// Scaled kernel `K_h(y) = h^-1 K(y/h)`.
    pub fn kernel(self, y: f64) -> f64 {
        triweight(y / self.0) / self.0
    }

    /// Derivative of the scaled kernel, `h^-2 K'(y/h)`, so that it is the
    /// exact derivative of [`Bandwidth::kernel`].
    pub fn kernel_deriv(self, y: f64) -> f64 {
        triweight_prime(y / self.0) / (self.0 * self.0)
    }

    /// Integral of the scaled kernel over `(-inf, y]`, equal to `IK(y/h)`.
    pub fn kernel_cdf(self, y: f64) -> f64 {
        triweight_cdf(y / self.0)
    }
}

/// Bandwidth schedule for a sample of size `n`: the main bandwidth
/// `h = c n^(-1/5)` and the oversmoothed pilot `h0 = c0 n^(-1/9)`.
///
/// The pilot exponent is fixed at -1/9; a pilot shrinking as fast as
/// `n^(-1/5)` would not recover the curvature that cancels the smoothing
/// bias inside the bootstrap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandwidthPlan {
    c: f64,
    c0: f64,
    n: usize,
    h: Bandwidth,
    h0: Bandwidth,
}

impl BandwidthPlan {
    pub fn new(c: f64, c0: f64, n: usize) -> Result<Self> {
        let nf = n as f64;
        let h = Bandwidth::new(c * nf.powf(-0.2))?;
        let h0 = Bandwidth::new(c0 * nf.powf(-1.0 / 9.0))?;
        Ok(BandwidthPlan { c, c0, n, h, h0 })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> Bandwidth {
        self.h
    }

    pub fn h0(&self) -> Bandwidth {
        self.h0
    }
}

/// Partial moment `a_j(rho) = ∫_{-1}^{rho} u^j K(u) du` of the triweight
/// kernel, in closed form for j = 0, 1, 2.
pub fn partial_moment(j: u32, rho: f64) -> f64 {
    let r = rho.clamp(-1.0, 1.0);
    match j {
        0 => triweight_cdf(r),
        1 => {
            let s = 1.0 - r * r;
            -(35.0 / 256.0) * s * s * s * s
        }
        2 => {
            let r2 = r * r;
            let poly = r * r2 * (1.0 / 3.0 + r2 * (-0.6 + r2 * (3.0 / 7.0 - r2 / 9.0)));
            35.0 / 32.0 * (poly + 16.0 / 315.0)
        }
        _ => panic!("partial moments implemented for j <= 2 only"),
    }
}

/// First-order moment-matching boundary kernel for the Nadaraya-Watson
/// estimator near the edges of `[0, 1]`.
///
/// For a point at relative distance `rho = t/h` from the left edge the data
/// only cover kernel arguments in `[-1, rho]`. The corrected kernel is the
/// linear combination of `K(u)` and `u K(u)`
///
/// ```text
/// B_rho(u) = (a2(rho) - a1(rho) u) K(u) / (a0(rho) a2(rho) - a1(rho)^2)
/// ```
///
/// which restores `∫_{-1}^{rho} B = 1` and `∫_{-1}^{rho} u B = 0`. At
/// `rho = 1` it reduces to `K` itself.
pub fn boundary_kernel(u: f64, rho: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&rho), "rho must lie in [0, 1]");
    let a0 = partial_moment(0, rho);
    let a1 = partial_moment(1, rho);
    let a2 = partial_moment(2, rho);
    let denom = a0 * a2 - a1 * a1;
    // Strictly positive for rho in [0, 1] by Cauchy-Schwarz; a zero here
    // would mean the moment system is degenerate.
    assert!(denom > 0.0, "degenerate boundary moment matrix");
    (a2 - a1 * u) * triweight(u) / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triweight_values() {
        assert_eq!(triweight(0.0), 35.0 / 32.0);
        assert_eq!(triweight(1.0), 0.0);
        assert_eq!(triweight(-1.0), 0.0);
        assert_eq!(triweight(2.5), 0.0);
        assert_eq!(triweight(0.3), triweight(-0.3));
        assert!(triweight(0.99) > 0.0);
    }

    #[test]
    fn prime_is_odd_and_vanishes_at_support_ends() {
        assert_eq!(triweight_prime(0.0), 0.0);
        assert_eq!(triweight_prime(1.0), 0.0);
        assert_eq!(triweight_prime(-1.0), 0.0);
        assert_eq!(triweight_prime(0.4), -triweight_prime(-0.4));
        // -(105/16) * 0.5 * (0.75)^2
        assert!((triweight_prime(0.5) - (-1.845703125)).abs() < 1e-15);
    }

    #[test]
    fn cdf_endpoints_and_midpoint() {
        assert_eq!(triweight_cdf(-1.0), 0.0);
        assert_eq!(triweight_cdf(1.0), 1.0);
        assert_eq!(triweight_cdf(-3.0), 0.0);
        assert_eq!(triweight_cdf(7.0), 1.0);
        assert_eq!(triweight_cdf(0.0), 0.5);
        assert!((triweight_cdf(0.5) - 0.929443359375).abs() < 1e-12);
    }

    #[test]
    fn cdf_is_nondecreasing() {
        let mut prev = -1.0;
        for i in 0..=2000 {
            let y = -1.1 + 2.2 * i as f64 / 2000.0;
            let v = triweight_cdf(y);
            assert!(v >= prev, "cdf decreased at y = {y}");
            prev = v;
        }
    }

    #[test]
    fn bandwidth_bounds() {
        assert!(Bandwidth::new(0.25).is_ok());
        assert!(Bandwidth::new(0.0).is_err());
        assert!(Bandwidth::new(0.5).is_err());
        assert!(Bandwidth::new(-0.1).is_err());
        assert!(Bandwidth::new(f64::NAN).is_err());
    }

    #[test]
    fn scaled_kernel_values() {
        let h = Bandwidth::new(0.25).unwrap();
        assert_eq!(h.kernel(0.0), 4.0 * 35.0 / 32.0);
        assert_eq!(h.kernel_cdf(0.25), 1.0);
        assert_eq!(h.kernel_cdf(-0.25), 0.0);
        assert_eq!(h.kernel_deriv(0.125), triweight_prime(0.5) / (0.25 * 0.25));
    }

    #[test]
    fn plan_derives_both_bandwidths() {
        let plan = BandwidthPlan::new(0.5, 0.7, 100).unwrap();
        assert!((plan.h().get() - 0.5 * 100f64.powf(-0.2)).abs() < 1e-15);
        assert!((plan.h0().get() - 0.7 * 100f64.powf(-1.0 / 9.0)).abs() < 1e-15);
        // n too small: pilot bandwidth reaches 0.5
        assert!(BandwidthPlan::new(0.5, 0.7, 10).is_err());
        assert!(BandwidthPlan::new(0.0, 0.7, 100).is_err());
    }

    #[test]
    fn partial_moments_at_known_points() {
        assert!((partial_moment(0, 0.0) - 0.5).abs() < 1e-15);
        assert!((partial_moment(1, 0.0) - (-35.0 / 256.0)).abs() < 1e-15);
        assert!((partial_moment(2, 0.0) - 1.0 / 18.0).abs() < 1e-15);
        assert!((partial_moment(0, 1.0) - 1.0).abs() < 1e-15);
        assert!(partial_moment(1, 1.0).abs() < 1e-15);
        assert!((partial_moment(2, 1.0) - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn boundary_kernel_reduces_to_triweight_at_rho_one() {
        for &u in &[-0.9, -0.5, 0.0, 0.3, 0.7] {
            assert!((boundary_kernel(u, 1.0) - triweight(u)).abs() < 1e-12);
        }
    }

    #[test]
    fn boundary_kernel_value_at_zero() {
        // Solve the 2x2 moment system at rho = 0 by hand:
        // B(0) = a2 / (a0 a2 - a1^2) * K(0)
        let a0 = 0.5;
        let a1 = -35.0 / 256.0;
        let a2 = 1.0 / 18.0;
        let expect = a2 / (a0 * a2 - a1 * a1) * (35.0 / 32.0);
        assert!((boundary_kernel(0.0, 0.0) - expect).abs() < 1e-12);
    }
}
