//! Seeded initial-data factory: neutral density perturbations and velocities
//! split into a potential part of size `delta0` and a divergence-free part of
//! size `pu_amplitude` (the experiments use `pu_amplitude = O(delta0 eps)`).

use crate::state::FluidState;
use crate::Variant;
use spectral_core::norms::hs_norm;
use spectral_core::project::leray_project;
use spectral_core::synth::{random_real_field, random_real_vector_field};
use spectral_core::{Complex, Grid, VectorField};

#[derive(Debug, Clone, Copy)]
pub struct DataParams {
    pub seed: u64,
    /// Spectral band `|xi| <= band` of the random fields.
    pub band: f64,
    /// Target `H^3` size of the density and the potential velocity part.
    pub delta0: f64,
    /// Target `H^3` size of the divergence-free velocity part.
    pub pu_amplitude: f64,
}

fn vector_h3(u: &VectorField) -> f64 {
    u.components()
        .iter()
        .map(|c| hs_norm(c, 3.0).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn rescale(u: &mut VectorField, target: f64) {
    let size = vector_h3(u);
    if size > 0.0 {
        u.scale(Complex::new(target / size, 0.0));
    }
}

/// Build `(rho0, u0)` with `||rho0||_{H^3} = delta0`,
/// `||P_perp u0||_{H^3} = delta0`, `||P u0||_{H^3} = pu_amplitude`.
pub fn make_initial_data(
    grid: &Grid,
    variant: Variant,
    epsilon: f64,
    params: &DataParams,
) -> FluidState {
    let mut rho = random_real_field(grid, params.seed, params.band, 1.0);
    let h3 = hs_norm(&rho, 3.0).max(f64::MIN_POSITIVE);
    rho.scale(Complex::new(params.delta0 / h3, 0.0));

    let w = random_real_vector_field(grid, params.seed.wrapping_add(101), params.band, 1.0);
    let (mut solenoidal, mut potential) = leray_project(&w);
    rescale(&mut potential, params.delta0);
    rescale(&mut solenoidal, params.pu_amplitude);
    let mut u = potential;
    u.add_assign(&solenoidal);
    let mut state = FluidState {
        variant,
        epsilon,
        rho,
        u,
    };
    state.dealias();
    state
}
