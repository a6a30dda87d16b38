//! Closed-form evaluation of the linearized semigroup for the symmetrized
//! two-component system `d/dt V + A(D) V = 0` with
//! `A(xi) = [[0, w(xi)], [-w(xi), 2 eps |xi|^2]]`, where the wave symbol is
//! `w = <xi>` for the electron coupling and `w = p(|xi|)` for the ion one.
//!
//! Eigenvalues are `-eps |xi|^2 +/- i b(xi)` with
//! `b = sqrt(w^2 - eps^2 |xi|^4)` while the radicand is positive, and the
//! matrix entries are continued through the crossing with cosh/sinh forms and
//! a Taylor patch, so the Green matrix is real and smooth in every regime.

pub mod damping;
pub mod dispersion;
pub mod error;
pub mod green;
pub mod oracle;
pub mod qtransform;

pub use dispersion::{DispersionSymbol, Variant};
pub use error::SemigroupError;
pub use green::{apply_semigroup, green_matrix, GreenMatrix};
pub use qtransform::{q_inverse, q_transform};

pub type Complex = num_complex::Complex64;
