use thiserror::Error;

#[derive(Debug, Error)]
pub enum SemigroupError {
    #[error("b(xi) undefined: radicand {radicand} < 0 at r = {r} (overdamped regime; use eigenvalues())")]
    NegativeRadicand { r: f64, radicand: f64 },
    #[error("fields carry {fraction:.3e} of their energy outside the cutoff support (tolerance {tol:.1e})")]
    OutsideCutoffSupport { fraction: f64, tol: f64 },
    #[error(transparent)]
    Spectral(#[from] spectral_core::SpectralError),
}
