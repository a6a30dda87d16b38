use crate::{Complex, SolverError, Variant};
use spectral_core::field::gradient;
use spectral_core::{SpectralField, VectorField};

/// Solve the coupling potential: electron `Lap phi = rho` (neutral data,
/// zero mode of `phi` set to 0), ion `(Lap - 1) phi = rho`.
pub fn poisson_solve(rho: &SpectralField, variant: Variant) -> Result<SpectralField, SolverError> {
    let grid = rho.grid().clone();
    let mut phi = rho.clone();
    match variant {
        Variant::Electron => {
            let mean = rho.mean_coeff().norm();
            let size = rho.coeff_l2().max(f64::MIN_POSITIVE);
            if mean > 1e-12 * size {
                return Err(SolverError::Neutrality { mean });
            }
            for (i, c) in phi.coeffs_mut().iter_mut().enumerate() {
                let r2 = grid.xi_norm_sq(i);
                if r2 == 0.0 {
                    *c = Complex::ZERO;
                } else {
                    *c = -*c / r2;
                }
            }
        }
        Variant::Ion => {
            for (i, c) in phi.coeffs_mut().iter_mut().enumerate() {
                let r2 = grid.xi_norm_sq(i);
                *c = -*c / (1.0 + r2);
            }
        }
    }
    Ok(phi)
}

/// Electric field `grad phi` straight from the density.
pub fn electric_field(rho: &SpectralField, variant: Variant) -> Result<VectorField, SolverError> {
    Ok(gradient(&poisson_solve(rho, variant)?))
}

/// Residual of the elliptic equation, coefficient l2 relative to `rho`.
pub fn elliptic_residual(rho: &SpectralField, phi: &SpectralField, variant: Variant) -> f64 {
    let grid = rho.grid();
    let mut acc = 0.0f64;
    for i in 0..grid.len() {
        let r2 = grid.xi_norm_sq(i);
        let lhs = match variant {
            Variant::Electron => -r2 * phi.coeffs()[i],
            Variant::Ion => -(r2 + 1.0) * phi.coeffs()[i],
        };
        let rhs = if variant == Variant::Electron && i == 0 {
            Complex::ZERO
        } else {
            rho.coeffs()[i]
        };
        acc += (lhs - rhs).norm_sqr();
    }
    acc.sqrt() / rho.coeff_l2().max(f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use spectral_core::Grid;

    fn cos_x1(grid: &Grid) -> SpectralField {
        let mut f = SpectralField::zeros(grid);
        let half = Complex::new(0.5, 0.0);
        f.coeffs_mut()[grid.index_of_k(&[1, 0, 0]).unwrap()] = half;
        f.coeffs_mut()[grid.index_of_k(&[-1, 0, 0]).unwrap()] = half;
        f
    }

    #[test]
    fn electron_cosine() {
        let grid = Grid::new(1, 16, 2.0 * std::f64::consts::PI, 1.0).unwrap();
        let rho = cos_x1(&grid);
        let phi = poisson_solve(&rho, Variant::Electron).unwrap();
        // phi = -cos(x1) at |xi| = 1
        let expect = rho.scaled(Complex::new(-1.0, 0.0));
        assert!(phi.diff_with(&expect).coeff_l2() < 1e-14);
        assert!(elliptic_residual(&rho, &phi, Variant::Electron) < 1e-12);
    }

    #[test]
    fn ion_cosine() {
        let grid = Grid::new(1, 16, 2.0 * std::f64::consts::PI, 1.0).unwrap();
        let rho = cos_x1(&grid);
        let phi = poisson_solve(&rho, Variant::Ion).unwrap();
        let expect = rho.scaled(Complex::new(-0.5, 0.0));
        assert!(phi.diff_with(&expect).coeff_l2() < 1e-14);
        assert!(elliptic_residual(&rho, &phi, Variant::Ion) < 1e-12);
    }

    #[test]
    fn random_neutral_density_residual() {
        let grid = Grid::new(2, 32, 7.0, 1.0).unwrap();
        let rho = spectral_core::synth::random_real_field(&grid, 77, 10.0, 0.3);
        let phi = poisson_solve(&rho, Variant::Electron).unwrap();
        assert!(elliptic_residual(&rho, &phi, Variant::Electron) < 1e-12);
    }

    #[test]
    fn electron_rejects_nonneutral() {
        let grid = Grid::new(1, 8, 1.0, 1.0).unwrap();
        let mut rho = SpectralField::zeros(&grid);
        rho.coeffs_mut()[0] = Complex::new(0.3, 0.0);
        assert!(poisson_solve(&rho, Variant::Electron).is_err());
        // the ion symbol is regular at the origin: no neutrality needed
        assert!(poisson_solve(&rho, Variant::Ion).is_ok());
    }
}
