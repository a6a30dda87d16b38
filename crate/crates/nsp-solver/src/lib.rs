//! Pseudo-spectral integration of the scaled Navier-Stokes-Poisson systems:
//! the full system in primitive perturbation variables, the irrotational main
//! system, the perturbation system driven by the main flow, and the exact
//! two-way splitting of the full solution into main + perturbation.
//!
//! All nonlinear products are formed pseudo-spectrally (transform, multiply,
//! transform back, dealias with the 2/3 mask). The quadratic pressure law
//! makes `grad p(rho)/rho = grad rho` exact, so the split systems add up to
//! the full one identically term by term; the splitting-consistency runs
//! check that the discretization preserves this to rounding.

pub mod checkpoint;
pub mod data;
pub mod error;
pub mod poisson;
pub mod rhs;
pub mod splitting;
pub mod state;
pub mod stepper;
pub mod symmetrize;

pub use error::SolverError;
pub use linear_semigroup::Variant;
pub use state::FluidState;

pub type Complex = num_complex::Complex64;

/// Collocation-point density floor: runs abort (rather than clip) when
/// `1 + rho` falls below this.
pub const DENSITY_FLOOR: f64 = 0.1;
