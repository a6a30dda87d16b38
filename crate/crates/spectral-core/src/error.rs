use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("grid dimension must be 1, 2 or 3 (got {0})")]
    BadDim(usize),
    #[error("points per axis must be a power of two >= 8 (got {0})")]
    BadPoints(usize),
    #[error("box length must be positive and finite (got {0})")]
    BadBoxLength(f64),
    #[error("dealias fraction must lie in (0, 1] (got {0})")]
    BadDealiasFraction(f64),
    #[error("array shape mismatch: expected {expected} values, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("non-finite symbol value at unmasked lattice point {index}")]
    NonFiniteSymbol { index: usize },
    #[error("field has non-zero mean (|c0| = {mean}, tolerance {tol}); operation requires neutrality")]
    NonZeroMean { mean: f64, tol: f64 },
    #[error("invalid parameter {name}: {reason}")]
    BadParam { name: &'static str, reason: String },
}
