//! Energy functionals and decay bookkeeping over stored solver trajectories:
//! the weighted `E_N` of the main system, the perturbation energies `E_M` and
//! their modified (cross-term) variant, negative-Sobolev propagation with the
//! frequency-Hoelder interpolation identity, decay-rate fits and the
//! `eps Lap R` heat-gain checks on linear trajectories.

pub mod decay;
pub mod energy;
pub mod epsdelta;
pub mod error;
pub mod negsob;
pub mod perturb;
pub mod record;

pub use error::DiagnosticsError;
pub use record::{SplitTrajectory, Trajectory};

pub type Complex = num_complex::Complex64;
