use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("density floor violated: min(1 + rho) = {min_density:.4} < {floor}")]
    DensityFloor { min_density: f64, floor: f64 },
    #[error("NaN produced in nonlinear products at t = {t}")]
    NanProduct { t: f64 },
    #[error("CFL violation: dt = {dt} exceeds limit {limit:.4e} ({reason})")]
    CflViolation {
        dt: f64,
        limit: f64,
        reason: &'static str,
    },
    #[error("electron Poisson solve requires neutral density (|rho^(0)| = {mean:.3e})")]
    Neutrality { mean: f64 },
    #[error("checkpoint format error: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Spectral(#[from] spectral_core::SpectralError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
