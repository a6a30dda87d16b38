//! Spectral tendencies. The stiff constant-coefficient viscosity `eps L`
//! (with `L u = Lap u + grad div u`) is NOT included here: the stepper applies
//! it exactly through the integrating factor. The explicit tendencies carry
//! advection, pressure/electric forcing and the variable-coefficient viscous
//! remainder `eps (1/(1+rho) - 1) L u` of the full/perturbation systems.

use crate::poisson::electric_field;
use crate::state::FluidState;
use crate::{Complex, SolverError, Variant, DENSITY_FLOOR};
use spectral_core::fft::{forward_transform, inverse_transform};
use spectral_core::field::gradient;
use spectral_core::{Grid, SpectralField, VectorField};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    /// Full system in primitive perturbation variables: viscosity
    /// `(eps/(1+rho)) L u`.
    Full,
    /// Irrotational main system: viscosity `eps L u` (no density weight).
    Main,
}

#[derive(Debug, Clone, Copy)]
pub struct RhsOptions {
    pub nonlinear: bool,
}

impl Default for RhsOptions {
    fn default() -> Self {
        RhsOptions { nonlinear: true }
    }
}

fn check_physical(grid: &Grid, rho_phys: &[Complex], t: f64) -> Result<(), SolverError> {
    let mut min_density = f64::INFINITY;
    for c in rho_phys {
        if !c.re.is_finite() {
            return Err(SolverError::NanProduct { t });
        }
        min_density = min_density.min(1.0 + c.re);
    }
    let _ = grid;
    if min_density < DENSITY_FLOOR {
        return Err(SolverError::DensityFloor {
            min_density,
            floor: DENSITY_FLOOR,
        });
    }
    Ok(())
}

fn product_to_spectral(grid: &Grid, a: &[Complex], b: &[Complex]) -> SpectralField {
    let prod: Vec<Complex> = a.iter().zip(b).map(|(x, y)| x * y).collect();
    let mut f = forward_transform(grid, &prod).expect("shape fixed by grid");
    f.dealias();
    f
}

/// `L u = Lap u + grad div u` in coefficients.
pub fn lame_operator(u: &VectorField) -> VectorField {
    let grid = u.grid().clone();
    let d = grid.dim();
    let mut out = VectorField::zeros(&grid);
    for i in 0..grid.len() {
        let xi = grid.xi_at(i);
        let r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        let mut div = Complex::ZERO;
        for a in 0..d {
            div += Complex::new(0.0, xi[a]) * u.component(a).coeffs()[i];
        }
        for b in 0..d {
            let lap = -r2 * u.component(b).coeffs()[i];
            let gd = Complex::new(0.0, xi[b]) * div; // i xi_b (i xi . u^)
            out.component_mut(b).coeffs_mut()[i] = lap + gd;
        }
    }
    out
}

struct PhysicalState {
    rho: Vec<Complex>,
    u: Vec<Vec<Complex>>,
    grad_u: Vec<Vec<Vec<Complex>>>, // grad_u[a][b] = d_a u_b samples
}

fn to_physical(state: &FluidState, with_gradients: bool) -> PhysicalState {
    let d = state.grid().dim();
    let rho = inverse_transform(&state.rho);
    let u: Vec<Vec<Complex>> = (0..d)
        .map(|a| inverse_transform(state.u.component(a)))
        .collect();
    let grad_u = if with_gradients {
        (0..d)
            .map(|a| {
                (0..d)
                    .map(|b| inverse_transform(&state.u.component(b).derivative(a)))
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };
    PhysicalState { rho, u, grad_u }
}

/// Tendency of the full or main system.
pub fn rhs_single(
    kind: SystemKind,
    state: &FluidState,
    opts: &RhsOptions,
    t: f64,
) -> Result<FluidState, SolverError> {
    let grid = state.grid().clone();
    let d = grid.dim();
    let mut out = FluidState::zeros(&grid, state.variant, state.epsilon);

    // linear part: d/dt rho = -div u ; d/dt u = -grad rho + grad phi
    let divu = state.u.divergence();
    out.rho.sub_assign(&divu);
    let grad_rho = gradient(&state.rho);
    let efield = electric_field(&state.rho, state.variant)?;
    for b in 0..d {
        out.u
            .component_mut(b)
            .axpy(Complex::new(-1.0, 0.0), grad_rho.component(b));
        out.u
            .component_mut(b)
            .axpy(Complex::new(1.0, 0.0), efield.component(b));
    }

    if !opts.nonlinear {
        return Ok(out);
    }

    let phys = to_physical(state, true);
    check_physical(&grid, &phys.rho, t)?;

    // density: -div(rho u)
    for a in 0..d {
        let rho_u = product_to_spectral(&grid, &phys.rho, &phys.u[a]);
        out.rho.axpy(Complex::new(-1.0, 0.0), &rho_u.derivative(a));
    }
    // velocity advection: -(u . grad) u
    for b in 0..d {
        for a in 0..d {
            let adv = product_to_spectral(&grid, &phys.u[a], &phys.grad_u[a][b]);
            out.u.component_mut(b).axpy(Complex::new(-1.0, 0.0), &adv);
        }
    }
    // full system: variable-coefficient viscous remainder eps (1/(1+rho) - 1) L u
    if kind == SystemKind::Full {
        let lu = lame_operator(&state.u);
        let w: Vec<Complex> = phys
            .rho
            .iter()
            .map(|r| Complex::new(1.0 / (1.0 + r.re) - 1.0, 0.0))
            .collect();
        for b in 0..d {
            let lu_phys = inverse_transform(lu.component(b));
            let corr = product_to_spectral(&grid, &w, &lu_phys);
            out.u
                .component_mut(b)
                .axpy(Complex::new(state.epsilon, 0.0), &corr);
        }
    }
    Ok(out)
}

/// Tendency of the perturbation system `(n, v)` driven by the main state
/// `(rho, u)` (same grid, same time).
pub fn rhs_perturb(
    perturb: &FluidState,
    main: &FluidState,
    opts: &RhsOptions,
    t: f64,
) -> Result<FluidState, SolverError> {
    let grid = perturb.grid().clone();
    let d = grid.dim();
    let mut out = FluidState::zeros(&grid, perturb.variant, perturb.epsilon);

    // linear part: d/dt n = -div v ; d/dt v = -grad n + grad psi
    let divv = perturb.u.divergence();
    out.rho.sub_assign(&divv);
    let grad_n = gradient(&perturb.rho);
    let epsi = electric_field(&perturb.rho, perturb.variant)?;
    for b in 0..d {
        out.u
            .component_mut(b)
            .axpy(Complex::new(-1.0, 0.0), grad_n.component(b));
        out.u
            .component_mut(b)
            .axpy(Complex::new(1.0, 0.0), epsi.component(b));
    }

    if !opts.nonlinear {
        return Ok(out);
    }

    let pm = to_physical(main, true);
    let pp = to_physical(perturb, true);
    // total density floor applies to 1 + rho + n
    let rho_tot: Vec<Complex> = pm.rho.iter().zip(&pp.rho).map(|(a, b)| a + b).collect();
    check_physical(&grid, &rho_tot, t)?;

    // density: -div(rho v + n u + n v) with rho the main perturbation
    for a in 0..d {
        let mut flux = product_to_spectral(&grid, &pm.rho, &pp.u[a]);
        let u_plus_v: Vec<Complex> = pm.u[a].iter().zip(&pp.u[a]).map(|(x, y)| x + y).collect();
        flux.add_assign(&product_to_spectral(&grid, &pp.rho, &u_plus_v));
        out.rho.axpy(Complex::new(-1.0, 0.0), &flux.derivative(a));
    }
    // velocity: -(u . grad) v - (v . grad) u - (v . grad) v
    for b in 0..d {
        for a in 0..d {
            let t1 = product_to_spectral(&grid, &pm.u[a], &pp.grad_u[a][b]);
            let t2 = product_to_spectral(&grid, &pp.u[a], &pm.grad_u[a][b]);
            let t3 = product_to_spectral(&grid, &pp.u[a], &pp.grad_u[a][b]);
            for term in [&t1, &t2, &t3] {
                out.u.component_mut(b).axpy(Complex::new(-1.0, 0.0), term);
            }
        }
    }
    // source: eps (1/(rho_tot) - 1) (L v + L u)
    let lu = lame_operator(&main.u);
    let lv = lame_operator(&perturb.u);
    let w: Vec<Complex> = rho_tot
        .iter()
        .map(|r| Complex::new(1.0 / (1.0 + r.re) - 1.0, 0.0))
        .collect();
    for b in 0..d {
        let l_sum: Vec<Complex> = inverse_transform(lu.component(b))
            .iter()
            .zip(&inverse_transform(lv.component(b)))
            .map(|(x, y)| x + y)
            .collect();
        let corr = product_to_spectral(&grid, &w, &l_sum);
        out.u
            .component_mut(b)
            .axpy(Complex::new(perturb.epsilon, 0.0), &corr);
    }
    Ok(out)
}

/// Electron variant detail used by tests: tendency of a single density mode
/// with `u = 0` is `u_t^ = -i xi (1 + 1/|xi|^2) rho^`.
pub fn linear_velocity_symbol(variant: Variant, xi_norm_sq: f64) -> f64 {
    match variant {
        Variant::Electron => 1.0 + 1.0 / xi_norm_sq,
        Variant::Ion => 1.0 + 1.0 / (1.0 + xi_norm_sq),
    }
}
