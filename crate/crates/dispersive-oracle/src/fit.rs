//! Log-log least-squares decay fits.

use crate::error::OracleError;
use serde::Serialize;

/// Time series of norms with the fitted algebraic decay exponent.
#[derive(Debug, Clone, Serialize)]
pub struct DecayFit {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    /// Exponent `alpha` in `value ~ t^{-alpha}` (positive = decay).
    pub fitted_exponent: f64,
    pub fit_window: (f64, f64),
    /// RMS residual of the least-squares line in log-log coordinates.
    pub residual: f64,
}

impl DecayFit {
    /// Least squares of `ln(value)` against `ln(t)` over `window`.
    pub fn fit(times: &[f64], values: &[f64], window: (f64, f64)) -> Result<Self, OracleError> {
        if window.1 / window.0 < 10.0f64.sqrt() {
            return Err(OracleError::FitWindowTooShort {
                lo: window.0,
                hi: window.1,
            });
        }
        let pairs: Vec<(f64, f64)> = times
            .iter()
            .zip(values)
            .filter(|(t, v)| **t >= window.0 && **t <= window.1 && **v > 0.0)
            .map(|(t, v)| (t.ln(), v.ln()))
            .collect();
        if pairs.len() < 3 {
            return Err(OracleError::BadTimeList {
                need: 3,
                got: pairs.len(),
            });
        }
        let n = pairs.len() as f64;
        let sx: f64 = pairs.iter().map(|p| p.0).sum();
        let sy: f64 = pairs.iter().map(|p| p.1).sum();
        let sxx: f64 = pairs.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pairs.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let intercept = (sy - slope * sx) / n;
        let ss: f64 = pairs
            .iter()
            .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
            .sum();
        Ok(DecayFit {
            times: times.to_vec(),
            values: values.to_vec(),
            fitted_exponent: -slope,
            fit_window: window,
            residual: (ss / n).sqrt(),
        })
    }
}
