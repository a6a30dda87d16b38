use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiagnosticsError {
    #[error("time sampling too coarse: need at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("negative-Sobolev order must lie in (0, 1/2), got {0}")]
    BadNegOrder(f64),
    #[error("interpolation inequality violated at t = {t}: lhs {lhs:.6e} > rhs {rhs:.6e}")]
    InterpolationViolated { t: f64, lhs: f64, rhs: f64 },
    #[error(transparent)]
    Solver(#[from] nsp_solver::SolverError),
    #[error(transparent)]
    Spectral(#[from] spectral_core::SpectralError),
    #[error(transparent)]
    Oracle(#[from] dispersive_oracle::OracleError),
}
