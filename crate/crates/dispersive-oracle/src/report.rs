//! CSV and JSON emission for scan results.

use crate::fit::DecayFit;
use serde::Serialize;
use std::io::{self, Write};

/// One CSV row per time sample: `eps,kappa0,d,t,value`.
pub fn write_scan_csv<W: Write>(
    mut w: W,
    eps: f64,
    kappa0: f64,
    d: usize,
    fit: &DecayFit,
) -> io::Result<()> {
    writeln!(w, "eps,kappa0,d,t,value")?;
    for (t, v) in fit.times.iter().zip(&fit.values) {
        writeln!(w, "{eps:.6e},{kappa0:.6e},{d},{t:.12e},{v:.12e}")?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct ScanSummary {
    pub schema: u32,
    pub eps: f64,
    pub kappa0: f64,
    pub d: usize,
    pub fitted_exponent: f64,
    pub predicted_exponent: f64,
    pub tolerance: f64,
    pub residual: f64,
    pub fit_window: (f64, f64),
    pub pass: bool,
}

impl ScanSummary {
    pub fn new(
        eps: f64,
        kappa0: f64,
        d: usize,
        fit: &DecayFit,
        predicted: f64,
        tolerance: f64,
    ) -> Self {
        ScanSummary {
            schema: 1,
            eps,
            kappa0,
            d,
            fitted_exponent: fit.fitted_exponent,
            predicted_exponent: predicted,
            tolerance,
            residual: fit.residual,
            fit_window: fit.fit_window,
            pass: (fit.fitted_exponent - predicted).abs() <= tolerance,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}
