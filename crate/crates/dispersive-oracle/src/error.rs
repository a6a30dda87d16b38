use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("quadrature did not converge: {panels} panels, error estimate {estimate:.3e} > target {target:.3e}")]
    NonConvergentQuadrature {
        panels: usize,
        estimate: f64,
        target: f64,
    },
    #[error("profile tail too heavy: |f^({r})| = {value:.3e} exceeds the (1+r)^-10 envelope {bound:.3e}")]
    HeavyTail { r: f64, value: f64, bound: f64 },
    #[error("fit window [{lo}, {hi}] spans less than half a decade")]
    FitWindowTooShort { lo: f64, hi: f64 },
    #[error("need at least {need} increasing time samples, got {got}")]
    BadTimeList { need: usize, got: usize },
    #[error("dimension {0} unsupported here (d must be 2 or 3)")]
    BadDimension(usize),
    #[error("b'' has {found} sign changes on [{lo:.3}, {hi:.3}] at eps = {eps} (the dispersion analysis expects exactly one)")]
    IonInflectionCount {
        eps: f64,
        lo: f64,
        hi: f64,
        found: usize,
    },
    #[error("invalid parameter {name}: {reason}")]
    BadParam { name: &'static str, reason: String },
}
