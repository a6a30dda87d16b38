use crate::Variant;
use spectral_core::{Grid, SpectralField, VectorField};

/// Primitive unknowns of one fluid: the density perturbation `rho`
/// (physical density minus one) and the velocity `u`, stored spectrally.
/// The potential is derived from `rho` on demand via the Poisson solve.
#[derive(Debug, Clone, PartialEq)]
pub struct FluidState {
    pub variant: Variant,
    pub epsilon: f64,
    pub rho: SpectralField,
    pub u: VectorField,
}

impl FluidState {
    pub fn zeros(grid: &Grid, variant: Variant, epsilon: f64) -> Self {
        FluidState {
            variant,
            epsilon,
            rho: SpectralField::zeros(grid),
            u: VectorField::zeros(grid),
        }
    }

    pub fn grid(&self) -> &Grid {
        self.rho.grid()
    }

    pub fn dealias(&mut self) {
        self.rho.dealias();
        self.u.dealias();
    }

    /// `y += a x` over all prognostic coefficients.
    pub fn axpy(&mut self, a: f64, x: &FluidState) {
        let a = crate::Complex::new(a, 0.0);
        self.rho.axpy(a, &x.rho);
        self.u.axpy(a, &x.u);
    }

    pub fn scale(&mut self, a: f64) {
        let a = crate::Complex::new(a, 0.0);
        self.rho.scale(a);
        self.u.scale(a);
    }

    /// Mass coefficient `rho^(0)`; conserved by the divergence-form density
    /// equations.
    pub fn mass_coeff(&self) -> crate::Complex {
        self.rho.mean_coeff()
    }

    /// `sqrt(||rho||_{H^s}^2 + sum_a ||u_a||_{H^s}^2)`.
    pub fn hs_norm(&self, s: f64) -> f64 {
        let mut acc = spectral_core::norms::hs_norm(&self.rho, s).powi(2);
        for a in 0..self.u.dim() {
            acc += spectral_core::norms::hs_norm(self.u.component(a), s).powi(2);
        }
        acc.sqrt()
    }
}
