//! Symmetrized variables `h = <grad>/|grad| rho`, `c = div/|grad| u` and the
//! V-form quadratic terms. Defined for mean-zero density and irrotational
//! velocity; the zero mode maps to zero under the singular multipliers.

use crate::state::FluidState;
use crate::{Complex, SolverError};
use spectral_core::fft::{forward_transform, inverse_transform};
use spectral_core::project::riesz;
use spectral_core::{SpectralField, VectorField};

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetrizedState {
    pub h: SpectralField,
    pub c: SpectralField,
}

/// `(h, c)` from primitive `(rho, u)`; requires neutral density.
pub fn symmetrize(state: &FluidState) -> Result<SymmetrizedState, SolverError> {
    state.rho.require_mean_zero(spectral_core::NEUTRALITY_TOL)?;
    let grid = state.grid().clone();
    let d = grid.dim();
    let mut h = state.rho.clone();
    let mut c = SpectralField::zeros(&grid);
    for i in 0..grid.len() {
        let r2 = grid.xi_norm_sq(i);
        if r2 == 0.0 {
            h.coeffs_mut()[i] = Complex::ZERO;
            continue;
        }
        let r = r2.sqrt();
        h.coeffs_mut()[i] *= (1.0 + r2).sqrt() / r;
        let mut div = Complex::ZERO;
        for a in 0..d {
            div += Complex::new(0.0, grid.xi_at(i)[a]) * state.u.component(a).coeffs()[i];
        }
        c.coeffs_mut()[i] = div / r;
    }
    Ok(SymmetrizedState { h, c })
}

/// Primitive `(rho, u)` from `(h, c)`; exact inverse on irrotational
/// mean-zero states (`u = -R c`).
pub fn desymmetrize(v: &SymmetrizedState) -> (SpectralField, VectorField) {
    let grid = v.h.grid().clone();
    let mut rho = v.h.clone();
    for i in 0..grid.len() {
        let r2 = grid.xi_norm_sq(i);
        if r2 == 0.0 {
            rho.coeffs_mut()[i] = Complex::ZERO;
            continue;
        }
        rho.coeffs_mut()[i] *= r2.sqrt() / (1.0 + r2).sqrt();
    }
    let mut u = riesz(&v.c);
    u.scale(Complex::new(-1.0, 0.0));
    (rho, u)
}

/// V-form quadratic terms of the main system, evaluated pseudo-spectrally:
/// `B1 = <grad>/|grad| div(rho u)` with `(rho, u) = (|grad|/<grad> h, -R c)`,
/// so the h-equation reads `d/dt h + <grad> c = B1`;
/// `B2 = |grad| |R c|^2 / 2`, the c-equation source.
pub fn v_form_nonlinearity(v: &SymmetrizedState) -> (SpectralField, SpectralField) {
    let grid = v.h.grid().clone();
    let d = grid.dim();
    // rho from h
    let mut rho = v.h.clone();
    for i in 0..grid.len() {
        let r2 = grid.xi_norm_sq(i);
        rho.coeffs_mut()[i] *= if r2 == 0.0 {
            0.0
        } else {
            r2.sqrt() / (1.0 + r2).sqrt()
        };
    }
    let rc = riesz(&v.c);
    let rho_phys = inverse_transform(&rho);
    let rc_phys: Vec<Vec<Complex>> = (0..d).map(|a| inverse_transform(rc.component(a))).collect();

    // B1 = + <grad>/|grad| div(rho . (R c)) since u = -R c
    let mut b1 = SpectralField::zeros(&grid);
    for a in 0..d {
        let prod: Vec<Complex> = rho_phys
            .iter()
            .zip(&rc_phys[a])
            .map(|(x, y)| x * y)
            .collect();
        let mut f = forward_transform(&grid, &prod).expect("grid shape");
        f.dealias();
        b1.add_assign(&f.derivative(a));
    }
    for i in 0..grid.len() {
        let r2 = grid.xi_norm_sq(i);
        b1.coeffs_mut()[i] *= if r2 == 0.0 {
            Complex::ZERO
        } else {
            Complex::new((1.0 + r2).sqrt() / r2.sqrt(), 0.0)
        };
    }

    // B2 = |grad| |R c|^2 / 2
    let sq: Vec<Complex> = (0..grid.len())
        .map(|i| {
            let mut acc = Complex::ZERO;
            for comp in rc_phys.iter().take(d) {
                acc += comp[i] * comp[i];
            }
            acc
        })
        .collect();
    let mut b2 = forward_transform(&grid, &sq).expect("grid shape");
    b2.dealias();
    for i in 0..grid.len() {
        let r = grid.xi_norm_sq(i).sqrt();
        b2.coeffs_mut()[i] *= 0.5 * r;
    }
    (b1, b2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rhs::{rhs_single, RhsOptions, SystemKind};
    use crate::Variant;
    use spectral_core::field::gradient;
    use spectral_core::norms::hs_norm;
    use spectral_core::Grid;

    fn irrotational_state(grid: &Grid, seed: u64) -> FluidState {
        let psi = spectral_core::synth::random_real_field(grid, seed, 2.0, 0.02);
        let mut rho = spectral_core::synth::random_real_field(grid, seed + 1, 2.0, 0.02);
        rho.coeffs_mut()[0] = Complex::ZERO;
        let mut s = FluidState {
            variant: Variant::Electron,
            epsilon: 0.15,
            rho,
            u: gradient(&psi),
        };
        s.dealias();
        s
    }

    #[test]
    fn roundtrip_identity_on_irrotational_states() {
        let grid = Grid::new(2, 32, 8.0 * std::f64::consts::PI, 2.0 / 3.0).unwrap();
        let s = irrotational_state(&grid, 31);
        let v = symmetrize(&s).unwrap();
        let (rho2, u2) = desymmetrize(&v);
        let drho = rho2.diff_with(&s.rho).coeff_l2() / s.rho.coeff_l2();
        assert!(drho < 1e-12, "rho roundtrip {drho}");
        for a in 0..2 {
            let du = u2.component(a).diff_with(s.u.component(a)).coeff_l2();
            assert!(du < 1e-12 * s.hs_norm(0.0).max(1e-6), "u roundtrip {du}");
        }
    }

    #[test]
    fn single_mode_h_weight() {
        // |xi| = 1: h^ = sqrt(2) rho^
        let grid = Grid::new(1, 16, 2.0 * std::f64::consts::PI, 1.0).unwrap();
        let mut s = FluidState::zeros(&grid, Variant::Electron, 0.1);
        let idx = grid.index_of_k(&[1, 0, 0]).unwrap();
        s.rho.coeffs_mut()[idx] = Complex::new(0.3, -0.1);
        let v = symmetrize(&s).unwrap();
        let expect = Complex::new(0.3, -0.1) * 2.0f64.sqrt();
        assert!((v.h.coeffs()[idx] - expect).norm() < 1e-14);
    }

    #[test]
    fn nonzero_mean_rejected() {
        let grid = Grid::new(1, 8, 1.0, 1.0).unwrap();
        let mut s = FluidState::zeros(&grid, Variant::Electron, 0.1);
        s.rho.coeffs_mut()[0] = Complex::new(1.0, 0.0);
        assert!(symmetrize(&s).is_err());
    }

    #[test]
    fn v_form_tendency_matches_primitive_tendency() {
        // two-path check: symmetrize(d/dt primitive) = -A V + B(V, V)
        let grid = Grid::new(2, 32, 8.0 * std::f64::consts::PI, 2.0 / 3.0).unwrap();
        let s = irrotational_state(&grid, 77);
        let eps = s.epsilon;
        let prim_tendency = {
            // explicit part + viscous IF part evaluated directly: for the
            // comparison, add eps L u to the explicit main tendency
            let mut t = rhs_single(SystemKind::Main, &s, &RhsOptions::default(), 0.0).unwrap();
            let lu = crate::rhs::lame_operator(&s.u);
            for a in 0..2 {
                t.u.component_mut(a).axpy(Complex::new(eps, 0.0), lu.component(a));
            }
            t
        };
        // d/dt of (h, c) from the primitive tendency (linear multipliers
        // commute with d/dt)
        let dv = symmetrize(&FluidState {
            variant: s.variant,
            epsilon: s.epsilon,
            rho: prim_tendency.rho.clone(),
            u: prim_tendency.u.clone(),
        })
        .unwrap();

        // V-form right side: -A V + B(V, V)
        let v = symmetrize(&s).unwrap();
        let (b1, b2) = v_form_nonlinearity(&v);
        let mut rhs_h = b1.clone();
        let mut rhs_c = b2.clone();
        for i in 0..grid.len() {
            let r2 = grid.xi_norm_sq(i);
            let w = (1.0 + r2).sqrt();
            // dh/dt = -<grad> c + B1 ; dc/dt = <grad> h + 2 eps Lap c + B2
            rhs_h.coeffs_mut()[i] += -w * v.c.coeffs()[i];
            rhs_c.coeffs_mut()[i] += w * v.h.coeffs()[i] - 2.0 * eps * r2 * v.c.coeffs()[i];
        }
        let scale = hs_norm(&dv.h, 0.0) + hs_norm(&dv.c, 0.0);
        let defect =
            dv.h.diff_with(&rhs_h).coeff_l2() * grid.volume().sqrt() + dv.c.diff_with(&rhs_c).coeff_l2() * grid.volume().sqrt();
        assert!(defect < 1e-10 * scale.max(1e-12), "two-path defect {defect} vs scale {scale}");
    }
}
