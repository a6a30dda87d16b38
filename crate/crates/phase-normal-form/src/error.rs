use thiserror::Error;

#[derive(Debug, Error)]
pub enum PhaseError {
    #[error("bilinear pair sum needs {needed} symbol evaluations, budget is {budget}")]
    CostGuard { needed: usize, budget: usize },
    #[error("symbol not finite at lattice pair ({zeta:?}, {eta:?})")]
    NonFiniteSymbol { zeta: [f64; 3], eta: [f64; 3] },
    #[error("finite-difference step did not converge (ratio at h vs h/2 differ by {mismatch:.2})")]
    StepNotConverged { mismatch: f64 },
    #[error("trajectory supplies {got} nodes, quadrature needs at least {need}")]
    TooFewNodes { need: usize, got: usize },
    #[error(transparent)]
    Spectral(#[from] spectral_core::SpectralError),
    #[error(transparent)]
    Semigroup(#[from] linear_semigroup::SemigroupError),
}
