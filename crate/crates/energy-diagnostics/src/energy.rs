//! The weighted main-system energy
//! `E_N = sum_{|alpha| <= N} int (|d^a rho|^2 + |d^a grad phi|^2)/2
//! + (1 + rho) |d^a u|^2 / 2 dx` and its dissipation/inequality bookkeeping.

use crate::record::{time_derivative, Trajectory};
use crate::{Complex, DiagnosticsError};
use nsp_solver::poisson::electric_field;
use nsp_solver::state::FluidState;
use spectral_core::fft::inverse_transform;
use spectral_core::norms::{hs_norm, wsp_norm};
use spectral_core::{Grid, SpectralField};

/// All multi-indices with `|alpha| <= max_order` in `dim` variables.
pub fn multi_indices(dim: usize, max_order: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    let cap = |axis: usize| if axis < dim { max_order } else { 0 };
    for a0 in 0..=cap(0) {
        for a1 in 0..=cap(1) {
            for a2 in 0..=cap(2) {
                if a0 + a1 + a2 <= max_order {
                    out.push([a0, a1, a2]);
                }
            }
        }
    }
    out
}

fn derivative_weight(xi: &[f64; 3], alpha: &[usize; 3]) -> f64 {
    let mut w = 1.0;
    for a in 0..3 {
        w *= xi[a].powi(2 * alpha[a] as i32);
    }
    w
}

/// `sum_{|alpha| <= N} xi^{2 alpha}` per mode.
fn parseval_weights(grid: &Grid, n: usize) -> Vec<f64> {
    let alphas = multi_indices(grid.dim(), n);
    (0..grid.len())
        .map(|i| {
            let xi = grid.xi_at(i);
            alphas.iter().map(|a| derivative_weight(&xi, a)).sum()
        })
        .collect()
}

fn apply_alpha(f: &SpectralField, alpha: &[usize; 3]) -> SpectralField {
    let grid = f.grid().clone();
    let mut out = f.clone();
    for (i, c) in out.coeffs_mut().iter_mut().enumerate() {
        let xi = grid.xi_at(i);
        let mut m = Complex::new(1.0, 0.0);
        for a in 0..3 {
            for _ in 0..alpha[a] {
                m *= Complex::new(0.0, xi[a]);
            }
        }
        *c *= m;
    }
    out
}

/// Density-weighted energy `E_N`; the `rho`-weight enters only the velocity
/// block, evaluated at collocation points.
pub fn energy_en(state: &FluidState, n: usize) -> Result<f64, DiagnosticsError> {
    let grid = state.grid().clone();
    let weights = parseval_weights(&grid, n);
    let volume = grid.volume();
    // spectral blocks: rho and grad phi
    let efield = electric_field(&state.rho, state.variant)?;
    let mut acc = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        acc += 0.5 * w * state.rho.coeffs()[i].norm_sqr() * volume;
        for a in 0..grid.dim() {
            acc += 0.5 * w * efield.component(a).coeffs()[i].norm_sqr() * volume;
        }
    }
    // velocity block with the physical density weight
    let rho_phys = inverse_transform(&state.rho);
    let quad = grid.spacing().powi(grid.dim() as i32);
    for alpha in multi_indices(grid.dim(), n) {
        for a in 0..grid.dim() {
            let du = inverse_transform(&apply_alpha(state.u.component(a), &alpha));
            for (x, r) in du.iter().zip(&rho_phys) {
                acc += 0.5 * (1.0 + r.re) * x.norm_sqr() * quad;
            }
        }
    }
    Ok(acc)
}

/// Same functional with the density weight frozen to one.
pub fn energy_en_flat(state: &FluidState, n: usize) -> Result<f64, DiagnosticsError> {
    let grid = state.grid().clone();
    let weights = parseval_weights(&grid, n);
    let volume = grid.volume();
    let efield = electric_field(&state.rho, state.variant)?;
    let mut acc = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        acc += 0.5 * w * state.rho.coeffs()[i].norm_sqr() * volume;
        for a in 0..grid.dim() {
            acc += 0.5 * w * efield.component(a).coeffs()[i].norm_sqr() * volume;
            acc += 0.5 * w * state.u.component(a).coeffs()[i].norm_sqr() * volume;
        }
    }
    Ok(acc)
}

/// Dissipation functional `eps sum_{|alpha| <= N} int (1 + rho)
/// |d^alpha grad u|^2 dx`.
pub fn dissipation_en(state: &FluidState, n: usize) -> f64 {
    let grid = state.grid().clone();
    let rho_phys = inverse_transform(&state.rho);
    let quad = grid.spacing().powi(grid.dim() as i32);
    let mut acc = 0.0;
    for alpha in multi_indices(grid.dim(), n) {
        for a in 0..grid.dim() {
            for b in 0..grid.dim() {
                let dgrad = inverse_transform(&apply_alpha(
                    &state.u.component(b).derivative(a),
                    &alpha,
                ));
                for (x, r) in dgrad.iter().zip(&rho_phys) {
                    acc += (1.0 + r.re) * x.norm_sqr() * quad;
                }
            }
        }
    }
    state.epsilon * acc
}

/// `(||u||_{W^{1,inf}} + ||rho||_{W^{1,inf}}) ||U||_{H^N}^2` with
/// `U = (rho, grad phi, u)`.
pub fn inequality_majorant(state: &FluidState, n: usize) -> Result<f64, DiagnosticsError> {
    let w1inf_rho = wsp_norm(&state.rho, 1.0, f64::INFINITY)?;
    let mut w1inf_u = 0.0f64;
    let mut h_n_sq = hs_norm(&state.rho, n as f64).powi(2);
    let efield = electric_field(&state.rho, state.variant)?;
    for a in 0..state.grid().dim() {
        w1inf_u = w1inf_u.max(wsp_norm(state.u.component(a), 1.0, f64::INFINITY)?);
        h_n_sq += hs_norm(state.u.component(a), n as f64).powi(2);
        h_n_sq += hs_norm(efield.component(a), n as f64).powi(2);
    }
    Ok((w1inf_u + w1inf_rho) * h_n_sq)
}

#[derive(Debug, Clone)]
pub struct EnergyLedger {
    pub times: Vec<f64>,
    pub energy: Vec<f64>,
    pub dissipation: Vec<f64>,
    pub majorant: Vec<f64>,
    /// `r(t) = (dE/dt + dissipation) / majorant`, 0/0 guarded to 0.
    pub residual: Vec<f64>,
    pub sup_residual: f64,
}

/// Energy-inequality residual series along a recorded trajectory.
pub fn energy_inequality_residual(
    traj: &Trajectory,
    n: usize,
) -> Result<EnergyLedger, DiagnosticsError> {
    let energy: Vec<f64> = traj
        .states
        .iter()
        .map(|s| energy_en(s, n))
        .collect::<Result<_, _>>()?;
    let dissipation: Vec<f64> = traj.states.iter().map(|s| dissipation_en(s, n)).collect();
    let majorant: Vec<f64> = traj
        .states
        .iter()
        .map(|s| inequality_majorant(s, n))
        .collect::<Result<_, _>>()?;
    let dedt = time_derivative(&traj.times, &energy)?;
    let residual: Vec<f64> = (0..energy.len())
        .map(|i| {
            let num = dedt[i] + dissipation[i];
            if majorant[i] <= 1e-300 {
                0.0
            } else {
                num / majorant[i]
            }
        })
        .collect();
    let sup_residual = residual.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(EnergyLedger {
        times: traj.times.clone(),
        energy,
        dissipation,
        majorant,
        residual,
        sup_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nsp_solver::data::{make_initial_data, DataParams};
    use nsp_solver::rhs::SystemKind;
    use nsp_solver::Variant;
    use spectral_core::Grid;

    fn grid() -> Grid {
        Grid::new(2, 32, 8.0 * std::f64::consts::PI, 2.0 / 3.0).unwrap()
    }

    #[test]
    fn zero_state_zero_energy() {
        let s = FluidState::zeros(&grid(), Variant::Electron, 0.1);
        assert_eq!(energy_en(&s, 3).unwrap(), 0.0);
    }

    #[test]
    fn single_velocity_mode_order_zero() {
        // rho = 0, u = a cos: E_0 = (1/2) int |u|^2 = a^2 V / 4 per the two
        // half-amplitude coefficients
        let g = grid();
        let mut s = FluidState::zeros(&g, Variant::Electron, 0.1);
        let idx = g.index_of_k(&[1, 0, 0]).unwrap();
        let cdx = g.index_of_k(&[-1, 0, 0]).unwrap();
        s.u.component_mut(0).coeffs_mut()[idx] = Complex::new(0.5, 0.0);
        s.u.component_mut(0).coeffs_mut()[cdx] = Complex::new(0.5, 0.0);
        let e0 = energy_en(&s, 0).unwrap();
        let expect = 0.25 * g.volume(); // (1/2) * ||cos||_2^2 = V/4
        assert!((e0 - expect).abs() < 1e-10 * expect, "{e0} vs {expect}");
    }

    #[test]
    fn density_weight_sandwich() {
        // with ||rho||_inf <= 1/6 the weighted and flat energies agree within
        // the [5/6, 7/6] density bracket
        let g = grid();
        let s = make_initial_data(
            &g,
            Variant::Electron,
            0.2,
            &DataParams {
                seed: 3,
                band: 2.0,
                delta0: 0.08,
                pu_amplitude: 0.01,
            },
        );
        let ratio = energy_en(&s, 3).unwrap() / energy_en_flat(&s, 3).unwrap();
        assert!(ratio > 5.0 / 6.0 - 1e-9 && ratio < 7.0 / 6.0 + 1e-9, "{ratio}");
    }

    #[test]
    fn linear_flow_residual_is_dissipative() {
        // without nonlinear terms dE/dt = -2 eps int |grad u|-type <= -D,
        // so the residual stays <= 0 up to differentiation error
        let g = grid();
        let s0 = make_initial_data(
            &g,
            Variant::Electron,
            0.3,
            &DataParams {
                seed: 5,
                band: 2.0,
                delta0: 0.05,
                pu_amplitude: 0.0,
            },
        );
        let traj =
            crate::record::record_single(SystemKind::Main, false, s0, 0.01, 200, 4).unwrap();
        let ledger = energy_inequality_residual(&traj, 2).unwrap();
        assert!(
            ledger.sup_residual <= 1e-6,
            "sup residual {}",
            ledger.sup_residual
        );
    }

    #[test]
    fn small_nonlinear_run_residual_finite() {
        let g = grid();
        let s0 = make_initial_data(
            &g,
            Variant::Electron,
            0.3,
            &DataParams {
                seed: 6,
                band: 2.0,
                delta0: 0.05,
                pu_amplitude: 0.003,
            },
        );
        let traj = crate::record::record_single(SystemKind::Full, true, s0, 0.01, 200, 4).unwrap();
        let ledger = energy_inequality_residual(&traj, 3).unwrap();
        assert!(ledger.sup_residual.is_finite());
        assert!(ledger.sup_residual < 10.0, "{}", ledger.sup_residual);
    }
}
