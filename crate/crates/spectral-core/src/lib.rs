//! Periodic pseudo-spectral toolbox: grids, FFT-backed transforms, Fourier
//! multipliers, Littlewood-Paley blocks, Sobolev/Besov norms and the standard
//! projections (Leray, Riesz) used by the solver and verification crates.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * fields live on a `d`-dimensional periodic box of side `L` with `n`
//!   collocation points per axis; the frequency lattice is `xi = (2*pi/L) * k`
//!   with integer `k` in `[-n/2, n/2)`;
//! * `coeffs(k)` are the coefficients of `f(x) = sum_k coeffs(k) exp(i xi_k . x)`,
//!   i.e. the forward transform divides the DFT by `n^d`;
//! * singular symbols (`1/|xi|`, `1/|xi|^2`) map the zero mode to zero, and the
//!   operations that need neutrality enforce it explicitly.

pub mod cutoff;
pub mod error;
pub mod fft;
pub mod field;
pub mod grid;
pub mod lp;
pub mod norms;
pub mod project;
pub mod synth;

pub use cutoff::{chi, chi_tilde, profile_hash, CutoffParams};
pub use error::SpectralError;
pub use field::{SpectralField, VectorField};
pub use grid::Grid;
pub use norms::NormKind;

pub type Complex = num_complex::Complex64;

/// Tolerance used by the zero-mode neutrality checks (relative to the
/// coefficient l2 size of the field).
pub const NEUTRALITY_TOL: f64 = 1e-12;
