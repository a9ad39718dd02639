//! Preprocessing for the Lake Mendota freeze-duration series.
//!
//! The raw data are (year, days frozen) pairs for consecutive years; the
//! number of frozen days trends *downward*. To apply the monotone
//! machinery the years are rescaled to `(0, 1)` and the responses are
//! reversed in time, turning the downward trend into an upward one.

use crate::CliError;
use monoboot::RegressionSample;

/// Rescales `n` consecutive years to `x_i = i/(n+1)` and reverses the
/// response order. For the 157-year series starting in 1854 this gives
/// exactly `x_i = (year - 1853)/158`.
pub fn mendota_transform(years: &[f64], days: &[f64]) -> Result<RegressionSample, CliError> {
    if years.len() != days.len() {
        return Err(monoboot::Error::LengthMismatch {
            xs: years.len(),
            ys: days.len(),
        }
        .into());
    }
    for (i, w) in years.windows(2).enumerate() {
        if (w[1] - w[0] - 1.0).abs() > 1e-9 {
            return Err(CliError::NonConsecutiveYears { index: i });
        }
    }
    let n = years.len();
    let xs: Vec<f64> = (1..=n).map(|i| i as f64 / (n as f64 + 1.0)).collect();
    let ys: Vec<f64> = days.iter().rev().copied().collect();
    Ok(RegressionSample::new(xs, ys)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rescales_the_157_year_series() {
        let years: Vec<f64> = (1854..=2010).map(|y| y as f64).collect();
        let days: Vec<f64> = (0..157).map(|i| 120.0 - 0.1 * i as f64).collect();
        let s = mendota_transform(&years, &days).unwrap();
        assert_eq!(s.len(), 157);
        for (i, &x) in s.xs().iter().enumerate() {
            let year = years[i];
            assert!((x - (year - 1853.0) / 158.0).abs() < 1e-12);
        }
        // First output response is the last input response.
        assert_eq!(s.ys()[0], days[156]);
        assert_eq!(s.ys()[156], days[0]);
    }

    #[test]
    fn double_reversal_restores_order() {
        let years: Vec<f64> = (1900..=1909).map(|y| y as f64).collect();
        let days: Vec<f64> = (0..10).map(|i| 50.0 + i as f64).collect();
        let once = mendota_transform(&years, &days).unwrap();
        let twice: Vec<f64> = once.ys().iter().rev().copied().collect();
        assert_eq!(twice, days);
    }

    #[test]
    fn rejects_gaps() {
        let years = vec![1900.0, 1901.0, 1903.0];
        let days = vec![1.0, 2.0, 3.0];
        assert!(matches!(
            mendota_transform(&years, &days).unwrap_err(),
            CliError::NonConsecutiveYears { index: 1 }
        ));
    }
}
