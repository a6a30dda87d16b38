//! Two-way splitting runs: integrate the full system and the coupled
//! main + perturbation pair from the same data and compare.

use crate::data::{make_initial_data, DataParams};
use crate::rhs::SystemKind;
use crate::state::FluidState;
use crate::stepper::{advance, SingleFluid, SplitFluid, SplitState};
use crate::{SolverError, Variant};
use spectral_core::project::{curl_rel_l2, leray_project};
use spectral_core::Grid;

#[derive(Debug, Clone)]
pub struct SplittingReport {
    /// `max_t ||full - (main + perturb)||_{H^3} / ||full||_{H^3}`.
    pub max_rel_h3_deviation: f64,
    /// Curl diagnostic of the main system at the final time.
    pub final_main_curl: f64,
    /// `sup_t ||(n, grad psi, v)||_{H^3}` of the perturbation.
    pub max_perturb_h3: f64,
    pub times: Vec<f64>,
    pub deviations: Vec<f64>,
    pub perturb_h3: Vec<f64>,
}

fn h3_of_difference(full: &FluidState, split: &SplitState) -> (f64, f64) {
    let mut sum = split.main.clone();
    sum.axpy(1.0, &split.perturb);
    let mut diff = full.clone();
    diff.axpy(-1.0, &sum);
    let denom = full.hs_norm(3.0).max(f64::MIN_POSITIVE);
    (diff.hs_norm(3.0) / denom, denom)
}

fn perturb_h3_with_potential(perturb: &FluidState) -> f64 {
    // ||(n, grad psi, v)||_{H^3}
    let n = spectral_core::norms::hs_norm(&perturb.rho, 3.0);
    let v: f64 = perturb
        .u
        .components()
        .iter()
        .map(|c| spectral_core::norms::hs_norm(c, 3.0).powi(2))
        .sum::<f64>();
    let grad_psi = crate::poisson::electric_field(&perturb.rho, perturb.variant)
        .map(|g| {
            g.components()
                .iter()
                .map(|c| spectral_core::norms::hs_norm(c, 3.0).powi(2))
                .sum::<f64>()
        })
        .unwrap_or(0.0);
    (n * n + v + grad_psi).sqrt()
}

pub struct SplittingConfig {
    pub grid: Grid,
    pub variant: Variant,
    pub epsilon: f64,
    pub t_final: f64,
    pub dt: f64,
    pub data: DataParams,
    pub sample_stride: usize,
}

/// Run full vs main + perturbation; initial data split as
/// `main: (rho0, P_perp u0)`, `perturb: (0, P u0)`.
pub fn run_splitting_consistency(cfg: &SplittingConfig) -> Result<SplittingReport, SolverError> {
    let s0 = make_initial_data(&cfg.grid, cfg.variant, cfg.epsilon, &cfg.data);
    let (pu, pperp) = leray_project(&s0.u);
    let main0 = FluidState {
        variant: cfg.variant,
        epsilon: cfg.epsilon,
        rho: s0.rho.clone(),
        u: pperp,
    };
    let perturb0 = FluidState {
        variant: cfg.variant,
        epsilon: cfg.epsilon,
        rho: spectral_core::SpectralField::zeros(&cfg.grid),
        u: pu,
    };

    let steps = (cfg.t_final / cfg.dt).round() as usize;
    let full_sys = SingleFluid::new(SystemKind::Full);
    let split_sys = SplitFluid::new();

    // advance both, sampling full states on the stride
    let mut full_samples = Vec::new();
    let stride = cfg.sample_stride.max(1);
    let mut step_idx = 0usize;
    let _full_end = advance(&full_sys, s0.clone(), 0.0, cfg.dt, steps, |t, s| {
        if step_idx % stride == 0 || step_idx == steps {
            full_samples.push((t, s.clone()));
        }
        step_idx += 1;
    })?;

    let mut report = SplittingReport {
        max_rel_h3_deviation: 0.0,
        final_main_curl: 0.0,
        max_perturb_h3: 0.0,
        times: Vec::new(),
        deviations: Vec::new(),
        perturb_h3: Vec::new(),
    };
    let mut sample_iter = 0usize;
    let mut step_idx = 0usize;
    let split0 = SplitState {
        main: main0,
        perturb: perturb0,
    };
    let split_end = advance(&split_sys, split0, 0.0, cfg.dt, steps, |t, s| {
        if step_idx % stride == 0 || step_idx == steps {
            let (full_t, full_state) = &full_samples[sample_iter];
            debug_assert!((t - full_t).abs() < 1e-12);
            let (dev, _) = h3_of_difference(full_state, s);
            let ph3 = perturb_h3_with_potential(&s.perturb);
            report.times.push(t);
            report.deviations.push(dev);
            report.perturb_h3.push(ph3);
            report.max_rel_h3_deviation = report.max_rel_h3_deviation.max(dev);
            report.max_perturb_h3 = report.max_perturb_h3.max(ph3);
            sample_iter += 1;
        }
        step_idx += 1;
    })?;
    report.final_main_curl = curl_rel_l2(&split_end.main.u);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_config() -> SplittingConfig {
        SplittingConfig {
            grid: Grid::new(2, 32, 8.0 * std::f64::consts::PI, 2.0 / 3.0).unwrap(),
            variant: Variant::Electron,
            epsilon: 0.2,
            t_final: 0.5,
            dt: 0.01,
            data: DataParams {
                seed: 21,
                band: 1.5,
                delta0: 0.05,
                pu_amplitude: 0.2 * 0.01,
            },
            sample_stride: 10,
        }
    }

    #[test]
    fn splitting_deviation_is_rounding_level() {
        let report = run_splitting_consistency(&base_config()).unwrap();
        assert!(
            report.max_rel_h3_deviation < 1e-10,
            "deviation {}",
            report.max_rel_h3_deviation
        );
    }

    #[test]
    fn irrotational_data_keeps_tiny_deviation_and_curl() {
        let mut cfg = base_config();
        cfg.data.pu_amplitude = 0.0;
        let report = run_splitting_consistency(&cfg).unwrap();
        assert!(report.max_rel_h3_deviation < 1e-10);
        assert!(report.final_main_curl < 1e-8, "curl {}", report.final_main_curl);
    }

    #[test]
    fn rotational_data_yields_order_one_curl() {
        // sanity: the curl diagnostic is not trivially zero
        let grid = Grid::new(2, 16, 2.0 * std::f64::consts::PI, 2.0 / 3.0).unwrap();
        let w = spectral_core::synth::random_real_vector_field(&grid, 3, 3.0, 1.0);
        let (pu, _) = leray_project(&w);
        let curl = curl_rel_l2(&pu);
        assert!(curl > 0.5, "solenoidal field curl {curl}");
    }
}
