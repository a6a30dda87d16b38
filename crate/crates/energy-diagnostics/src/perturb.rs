//! Perturbation-system energies: `E_M`, the homogeneous shells, the cross
//! term `X = sum_{|alpha| <= M-1} int d^a grad n . d^a v dx`, and the modified
//! functional `E~_M = E_M + 8 C2 delta eps X` whose damping the reports track.

use crate::energy::multi_indices;
use crate::record::{time_derivative, time_integral, SplitTrajectory};
use crate::DiagnosticsError;
use nsp_solver::poisson::electric_field;
use nsp_solver::state::FluidState;
use nsp_solver::Variant;
use spectral_core::fft::inverse_transform;
use spectral_core::norms::homogeneous_hs_norm;
use spectral_core::Grid;

fn shell_weight(grid: &Grid, xi: &[f64; 3], k: usize) -> f64 {
    // sum over |alpha| = k of xi^{2 alpha}
    multi_indices(grid.dim(), k)
        .iter()
        .filter(|a| a.iter().sum::<usize>() == k)
        .map(|a| {
            let mut w = 1.0;
            for i in 0..3 {
                w *= xi[i].powi(2 * a[i] as i32);
            }
            w
        })
        .sum()
}

/// Homogeneous shell `sum_{|alpha| = k} (1/2) int rho |d^a v|^2 + |d^a n|^2
/// + |d^a grad psi|^2` (ion variant: `|d^a <grad> psi|^2`).
pub fn perturb_shell(
    main: &FluidState,
    perturb: &FluidState,
    k: usize,
) -> Result<f64, DiagnosticsError> {
    let grid = perturb.grid().clone();
    let volume = grid.volume();
    let psi_weight = |r2: f64| match perturb.variant {
        Variant::Electron => r2,          // |grad psi|^2 weight on psi^
        Variant::Ion => 1.0 + r2,         // |<grad> psi|^2
    };
    // spectral parts: n and the potential
    let phi = nsp_solver::poisson::poisson_solve(&perturb.rho, perturb.variant)?;
    let mut acc = 0.0;
    for i in 0..grid.len() {
        let xi = grid.xi_at(i);
        let w = shell_weight(&grid, &xi, k);
        let r2 = grid.xi_norm_sq(i);
        acc += 0.5 * w * perturb.rho.coeffs()[i].norm_sqr() * volume;
        acc += 0.5 * w * psi_weight(r2) * phi.coeffs()[i].norm_sqr() * volume;
    }
    // rho-weighted velocity part at collocation points
    let rho_tot = inverse_transform(&main.rho);
    let quad = grid.spacing().powi(grid.dim() as i32);
    for alpha in multi_indices(grid.dim(), k) {
        if alpha.iter().sum::<usize>() != k {
            continue;
        }
        for a in 0..grid.dim() {
            let mut dv = perturb.u.component(a).clone();
            for axis in 0..3 {
                for _ in 0..alpha[axis] {
                    dv = dv.derivative(axis);
                }
            }
            for (x, r) in inverse_transform(&dv).iter().zip(&rho_tot) {
                acc += 0.5 * (1.0 + r.re) * x.norm_sqr() * quad;
            }
        }
    }
    Ok(acc)
}

/// `E_M = sum_{k <= M}` shells.
pub fn perturb_energy(main: &FluidState, perturb: &FluidState, m: usize) -> Result<f64, DiagnosticsError> {
    let mut acc = 0.0;
    for k in 0..=m {
        acc += perturb_shell(main, perturb, k)?;
    }
    Ok(acc)
}

/// Cross term `X = sum_{|alpha| <= M-1} int d^a grad n . d^a v dx`.
pub fn cross_term(perturb: &FluidState, m: usize) -> f64 {
    let grid = perturb.grid().clone();
    let volume = grid.volume();
    let mut acc = 0.0;
    for i in 0..grid.len() {
        let xi = grid.xi_at(i);
        let w: f64 = multi_indices(grid.dim(), m.saturating_sub(1))
            .iter()
            .map(|a| {
                let mut p = 1.0;
                for ax in 0..3 {
                    p *= xi[ax].powi(2 * a[ax] as i32);
                }
                p
            })
            .sum();
        for a in 0..grid.dim() {
            let grad_n = crate::Complex::new(0.0, xi[a]) * perturb.rho.coeffs()[i];
            acc += w * (grad_n * perturb.u.component(a).coeffs()[i].conj()).re * volume;
        }
    }
    acc
}

/// `||(n, grad v)||_{H^M}^2`-type damped quantity of the combined estimate.
pub fn damped_quantity(perturb: &FluidState, m: usize) -> f64 {
    let grid = perturb.grid();
    let mut acc = spectral_core::norms::hs_norm(&perturb.rho, m as f64).powi(2);
    for a in 0..grid.dim() {
        for b in 0..grid.dim() {
            acc += spectral_core::norms::hs_norm(&perturb.u.component(b).derivative(a), m as f64)
                .powi(2);
        }
    }
    acc
}

/// `sqrt(||n||^2 + ||grad psi||^2 + ||v||^2)_{H^3}` of the perturbation.
pub fn perturb_h3_norm(perturb: &FluidState) -> Result<f64, DiagnosticsError> {
    let mut acc = spectral_core::norms::hs_norm(&perturb.rho, 3.0).powi(2);
    let gp = electric_field(&perturb.rho, perturb.variant)?;
    for a in 0..perturb.grid().dim() {
        acc += spectral_core::norms::hs_norm(perturb.u.component(a), 3.0).powi(2);
        acc += spectral_core::norms::hs_norm(gp.component(a), 3.0).powi(2);
    }
    Ok(acc.sqrt())
}

#[derive(Debug, Clone)]
pub struct PerturbEnergyReport {
    pub times: Vec<f64>,
    pub energy_m: Vec<f64>,
    pub modified_energy: Vec<f64>,
    pub cross: Vec<f64>,
    pub damped: Vec<f64>,
    pub perturb_h3: Vec<f64>,
    /// `1/2 E_M <= E~_M <= 2 E_M` held everywhere.
    pub sandwich_ok: bool,
    /// sup of `[d/dt E~_M + c eps * damped] / majorant` with the measured
    /// main-flow majorant; finite + refinement-stable is the pass signal.
    pub fitted_inequality_constant: f64,
    /// `sup_t [E_M(t) + c eps int_0^t damped] / (E_M(0) + delta^3 eps^2)`.
    pub groenwall_ratio: f64,
    pub sup_h3_over_delta_eps: f64,
}

/// Full report on a split trajectory. `delta0` is the data size, `c2` the
/// cross-term coupling, `c_damp` the damping coefficient used in the
/// Groenwall budget.
pub fn perturb_energy_report(
    traj: &SplitTrajectory,
    m: usize,
    delta0: f64,
    c2: f64,
    c_damp: f64,
) -> Result<PerturbEnergyReport, DiagnosticsError> {
    let eps = traj.perturb[0].epsilon;
    let n = traj.times.len();
    let mut energy_m = Vec::with_capacity(n);
    let mut modified = Vec::with_capacity(n);
    let mut cross = Vec::with_capacity(n);
    let mut damped = Vec::with_capacity(n);
    let mut h3 = Vec::with_capacity(n);
    let mut majorant = Vec::with_capacity(n);
    for i in 0..n {
        let main = &traj.main[i];
        let pert = &traj.perturb[i];
        let e = perturb_energy(main, pert, m)?;
        let x = cross_term(pert, m);
        energy_m.push(e);
        cross.push(x);
        modified.push(e + 8.0 * c2 * delta0 * eps * x);
        damped.push(damped_quantity(pert, m));
        h3.push(perturb_h3_norm(pert)?);
        // main-flow decay majorant (1+t)^{-a}-weighted E_M + delta^3 eps^2 term
        let main_winf = spectral_core::norms::wsp_norm(&main.rho, 1.0, f64::INFINITY)?
            + main
                .u
                .components()
                .iter()
                .map(|c| spectral_core::norms::wsp_norm(c, 1.0, f64::INFINITY).unwrap_or(0.0))
                .fold(0.0, f64::max);
        majorant.push(main_winf.powf(0.75) * e + delta0.powi(3) * eps * eps * main_winf.powf(1.25));
    }
    let sandwich_ok = energy_m
        .iter()
        .zip(&modified)
        .all(|(e, em)| *em >= 0.5 * e - 1e-300 && *em <= 2.0 * e + 1e-300);
    let dmod = time_derivative(&traj.times, &modified)?;
    let mut fitted = 0.0f64;
    for i in 0..n {
        let lhs = dmod[i] + c_damp * eps * damped[i];
        if majorant[i] > 1e-300 {
            fitted = fitted.max(lhs / majorant[i]);
        }
    }
    // Groenwall budget: E_M(t) + c eps int damped <= C10 E_M(0) + C11 d^3 e^2
    let mut groenwall_ratio = 0.0f64;
    for i in 0..n {
        let integral = time_integral(&traj.times[..=i], &damped[..=i]);
        let q = energy_m[i] + c_damp * eps * integral;
        let budget = energy_m[0].max(1e-300) + delta0.powi(3) * eps * eps;
        groenwall_ratio = groenwall_ratio.max(q / budget);
    }
    let sup_h3_over_delta_eps = h3
        .iter()
        .copied()
        .fold(0.0f64, f64::max)
        / (delta0 * eps).max(1e-300);
    Ok(PerturbEnergyReport {
        times: traj.times.clone(),
        energy_m,
        modified_energy: modified,
        cross,
        damped,
        perturb_h3: h3,
        sandwich_ok,
        fitted_inequality_constant: fitted,
        groenwall_ratio,
        sup_h3_over_delta_eps,
    })
}

/// Exact Cauchy-Schwarz check `|X| <= ||n||_{H^M} ||v||_{H^M}`-style bound
/// computed with the matching homogeneous pieces.
pub fn cross_term_cauchy_schwarz(perturb: &FluidState, m: usize) -> (f64, f64) {
    let x = cross_term(perturb, m).abs();
    // sum_{|a| <= M-1} int |d^a grad n| |d^a v| <= ||n||_{H^M} ||v||_{H^{M-1}}
    let n_h = spectral_core::norms::hs_norm(&perturb.rho, m as f64);
    let v_h: f64 = perturb
        .u
        .components()
        .iter()
        .map(|c| spectral_core::norms::hs_norm(c, (m - 1) as f64).powi(2))
        .sum::<f64>()
        .sqrt();
    let _ = homogeneous_hs_norm(&perturb.rho, 0.0);
    (x, n_h * v_h * (grid_dim_factor(perturb.grid())))
}

fn grid_dim_factor(_grid: &Grid) -> f64 {
    // the multi-index sum over |alpha| <= M-1 of xi^{2 alpha} is dominated by
    // the full <xi>^{2(M-1)} weight times the axis-count multiplier; a factor
    // d covers the component sum
    3.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use nsp_solver::data::{make_initial_data, DataParams};
    use nsp_solver::stepper::SplitState;
    use spectral_core::project::leray_project;
    use spectral_core::{Grid, SpectralField};

    fn split_traj(eps: f64, delta0: f64) -> SplitTrajectory {
        let grid = Grid::new(2, 32, 8.0 * std::f64::consts::PI, 2.0 / 3.0).unwrap();
        let s0 = make_initial_data(
            &grid,
            Variant::Electron,
            eps,
            &DataParams {
                seed: 40,
                band: 1.5,
                delta0,
                pu_amplitude: delta0 * eps,
            },
        );
        let (pu, pperp) = leray_project(&s0.u);
        let main0 = FluidState {
            variant: s0.variant,
            epsilon: eps,
            rho: s0.rho.clone(),
            u: pperp,
        };
        let perturb0 = FluidState {
            variant: s0.variant,
            epsilon: eps,
            rho: SpectralField::zeros(&grid),
            u: pu,
        };
        crate::record::record_split(
            SplitState {
                main: main0,
                perturb: perturb0,
            },
            0.01,
            300,
            6,
        )
        .unwrap()
    }

    #[test]
    fn zero_perturbation_zero_energies() {
        let grid = Grid::new(2, 16, 2.0 * std::f64::consts::PI, 2.0 / 3.0).unwrap();
        let main = FluidState::zeros(&grid, Variant::Electron, 0.1);
        let pert = FluidState::zeros(&grid, Variant::Electron, 0.1);
        assert_eq!(perturb_energy(&main, &pert, 3).unwrap(), 0.0);
        assert_eq!(cross_term(&pert, 3), 0.0);
    }

    #[test]
    fn sandwich_and_boundedness_on_small_run() {
        let traj = split_traj(0.2, 0.04);
        let report = perturb_energy_report(&traj, 3, 0.04, 1.0, 0.25).unwrap();
        assert!(report.sandwich_ok);
        assert!(report.fitted_inequality_constant.is_finite());
        assert!(
            report.sup_h3_over_delta_eps <= 8.0,
            "sup ratio {}",
            report.sup_h3_over_delta_eps
        );
    }

    #[test]
    fn cross_term_dominated_by_norm_product() {
        let traj = split_traj(0.3, 0.05);
        for (main, pert) in traj.main.iter().zip(&traj.perturb) {
            let _ = main;
            let (x, bound) = cross_term_cauchy_schwarz(pert, 3);
            assert!(x <= bound * (1.0 + 1e-12), "{x} vs {bound}");
        }
    }
}
