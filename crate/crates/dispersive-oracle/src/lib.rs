//! Genuine whole-space (`R^d`) evaluation of the low-frequency propagator
//! `exp(i t b(D)) chi_{eps,kappa0}(D)` on radial data through the
//! sphere-measure/Bessel reduction, plus the pointwise stationary-phase
//! ingredients (Hessian determinant, ion dispersion relation) and decay-rate
//! fits against the `(1+t)^{-d/2}` (electron) and `(1+t)^{-4/3}` (ion) rates.
//!
//! Transform convention: with coefficients `f^(xi)`, the physical value is
//! `(2 pi)^{-d} integral exp(i x.xi) f^(xi) dxi`, so
//! `propagator_point(0, 0, f) = (2 pi)^{-d} integral chi f^ dxi`; the sphere
//! kernel `K_d` carries the full surface-measure constant.

pub mod bessel;
pub mod error;
pub mod fit;
pub mod hessian;
pub mod ion;
pub mod profile;
pub mod propagator;
pub mod quadrature;
pub mod report;
pub mod scans;

pub use error::OracleError;
pub use fit::DecayFit;
pub use profile::RadialProfile;
pub use propagator::{propagator_point, sphere_kernel, PropagatorOptions};
pub use scans::{ion_decay_scan, sup_norm_scan, ScanOptions};

pub type Complex = num_complex::Complex64;
