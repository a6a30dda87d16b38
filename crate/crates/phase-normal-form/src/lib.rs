//! Phase functions `phi_jk(xi, eta) = (-1)^{j+1} b(xi) + (-1)^{k+1} b(eta)
//! - b(xi + eta)`, the quantity `A = (b(xi) + b(eta))^2 - b(xi+eta)^2`, the
//! divided normal-form symbols `m/phi_jk` and `m/phi_jk^2`, the bilinear
//! operator `T_m`, and the numerical verification of the time
//! integration-by-parts identity behind the low-frequency quadratic terms.

pub mod bilinear;
pub mod error;
pub mod identity;
pub mod phase;
pub mod scans;

pub use bilinear::{bilinear_apply, BilinearBudget, BilinearTable};
pub use error::PhaseError;
pub use identity::{normal_form_identity_check, IdentityConfig, IdentityResidual, TrajectorySource};
pub use phase::{phase_value, quantity_a, NormalFormSymbol, PhaseFamily};

pub type Complex = num_complex::Complex64;
