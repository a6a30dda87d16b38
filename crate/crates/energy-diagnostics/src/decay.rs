//! Decay-rate fits along trajectories and semigroup evaluations. Torus-run
//! fits are qualitative (finite box): the caller labels them with the
//! wraparound horizon.

use crate::record::Trajectory;
use crate::DiagnosticsError;
use dispersive_oracle::DecayFit;
use linear_semigroup::{apply_semigroup, DispersionSymbol};
use spectral_core::cutoff::CutoffParams;
use spectral_core::norms::hs_norm;
use spectral_core::SpectralField;

/// Algebraic decay fit of a norm series against a predicted exponent.
pub fn decay_fit(
    times: &[f64],
    values: &[f64],
    window: (f64, f64),
) -> Result<DecayFit, DiagnosticsError> {
    Ok(DecayFit::fit(times, values, window)?)
}

/// Exponential-rate fit: least squares of `ln(value)` against `t`; returns
/// the decay rate (positive = decay).
pub fn exp_rate_fit(times: &[f64], values: &[f64]) -> f64 {
    let pairs: Vec<(f64, f64)> = times
        .iter()
        .zip(values)
        .filter(|(_, v)| **v > 0.0)
        .map(|(t, v)| (*t, v.ln()))
        .collect();
    let n = pairs.len() as f64;
    let sx: f64 = pairs.iter().map(|p| p.0).sum();
    let sy: f64 = pairs.iter().map(|p| p.1).sum();
    let sxx: f64 = pairs.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pairs.iter().map(|p| p.0 * p.1).sum();
    -(n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// `W^{sigma,p}`-norm series of a trajectory's combined state
/// `(rho, grad phi, u)`.
pub fn trajectory_wsp_series(
    traj: &Trajectory,
    sigma: f64,
    p: f64,
) -> Result<Vec<f64>, DiagnosticsError> {
    traj.states
        .iter()
        .map(|s| {
            let mut acc = spectral_core::norms::wsp_norm(&s.rho, sigma, p)?.powi(2);
            let gp = nsp_solver::poisson::electric_field(&s.rho, s.variant)?;
            for a in 0..s.grid().dim() {
                acc += spectral_core::norms::wsp_norm(s.u.component(a), sigma, p)?.powi(2);
                acc += spectral_core::norms::wsp_norm(gp.component(a), sigma, p)?.powi(2);
            }
            Ok(acc.sqrt())
        })
        .collect()
}

/// High-frequency part of a linear `V`-flow under the exact semigroup:
/// returns `(times, ||chi^H V(t)||_{H^{N-1}})` and the fitted exponential
/// rate, which the damping estimate predicts to be at least `kappa0/4`.
pub fn high_freq_linear_decay(
    disp: &DispersionSymbol,
    params: &CutoffParams,
    h0: &SpectralField,
    c0: &SpectralField,
    n_minus_one: f64,
    times: &[f64],
) -> (Vec<f64>, f64) {
    let (_, h_hi) = spectral_core::cutoff::low_high_split(h0, params);
    let (_, c_hi) = spectral_core::cutoff::low_high_split(c0, params);
    let values: Vec<f64> = times
        .iter()
        .map(|&t| {
            let (ht, ct) = apply_semigroup(t, disp, &h_hi, &c_hi);
            (hs_norm(&ht, n_minus_one).powi(2) + hs_norm(&ct, n_minus_one).powi(2)).sqrt()
        })
        .collect();
    let rate = exp_rate_fit(times, &values);
    (values, rate)
}
