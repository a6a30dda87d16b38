use crate::error::SpectralError;
use crate::grid::Grid;
use crate::Complex;

/// Complex Fourier coefficients on the lattice of a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    coeffs: Vec<Complex>,
}

impl SpectralField {
    pub fn zeros(grid: &Grid) -> Self {
        SpectralField {
            grid: grid.clone(),
            coeffs: vec![Complex::ZERO; grid.len()],
        }
    }

    pub fn from_coeffs(grid: &Grid, coeffs: Vec<Complex>) -> Result<Self, SpectralError> {
        if coeffs.len() != grid.len() {
            return Err(SpectralError::ShapeMismatch {
                expected: grid.len(),
                got: coeffs.len(),
            });
        }
        Ok(SpectralField {
            grid: grid.clone(),
            coeffs,
        })
    }

    /// Field with a single unit coefficient at integer wavenumber `k`.
    pub fn single_mode(grid: &Grid, k: &[i64; 3], amplitude: Complex) -> Result<Self, SpectralError> {
        let mut f = Self::zeros(grid);
        let idx = grid.index_of_k(k).ok_or(SpectralError::BadParam {
            name: "k",
            reason: format!("wavenumber {k:?} outside lattice"),
        })?;
        f.coeffs[idx] = amplitude;
        Ok(f)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex] {
        &mut self.coeffs
    }

    pub fn mean_coeff(&self) -> Complex {
        self.coeffs[0]
    }

    /// l2 size of the coefficient vector (no volume factor).
    pub fn coeff_l2(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn check_same_grid(&self, other: &Self) -> Result<(), SpectralError> {
        if self.grid != other.grid {
            return Err(SpectralError::GridMismatch);
        }
        Ok(())
    }

    /// Pointwise multiply coefficients by a scalar symbol evaluated on the
    /// frequency lattice. Errors on non-finite symbol values at unmasked modes;
    /// masked modes (zeroed by the dealias mask) never evaluate the symbol.
    pub fn apply_multiplier<F>(&self, symbol: F) -> Result<Self, SpectralError>
    where
        F: Fn(&[f64; 3]) -> Complex,
    {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            let s = symbol(&self.grid.xi_at(i));
            if !s.re.is_finite() || !s.im.is_finite() {
                return Err(SpectralError::NonFiniteSymbol { index: i });
            }
            *c *= s;
        }
        Ok(out)
    }

    /// Same as [`apply_multiplier`](Self::apply_multiplier) for radial symbols.
    pub fn apply_radial<F>(&self, symbol: F) -> Result<Self, SpectralError>
    where
        F: Fn(f64) -> Complex,
    {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            let s = symbol(self.grid.xi_norm_sq(i).sqrt());
            if !s.re.is_finite() || !s.im.is_finite() {
                return Err(SpectralError::NonFiniteSymbol { index: i });
            }
            *c *= s;
        }
        Ok(out)
    }

    /// Zero every coefficient outside the dealias mask.
    pub fn dealias(&mut self) {
        for i in 0..self.coeffs.len() {
            if !self.grid.dealias_keep(i) {
                self.coeffs[i] = Complex::ZERO;
            }
        }
    }

    pub fn dealiased(&self) -> Self {
        let mut out = self.clone();
        out.dealias();
        out
    }

    /// Max deviation from Hermitian symmetry `c(-k) = conj(c(k))`,
    /// zero for fields representing real functions.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.coeffs.len() {
            let j = self.grid.conjugate_index(i);
            let d = (self.coeffs[i] - self.coeffs[j].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
        worst
    }

    pub fn scale(&mut self, a: Complex) {
        for c in &mut self.coeffs {
            *c *= a;
        }
    }

    pub fn scaled(&self, a: Complex) -> Self {
        let mut out = self.clone();
        out.scale(a);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.grid, other.grid);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.grid, other.grid);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
    }

    pub fn axpy(&mut self, a: Complex, other: &Self) {
        debug_assert_eq!(self.grid, other.grid);
        for (s, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *s += a * o;
        }
    }

    pub fn sum_with(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn diff_with(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    /// Enforce neutrality: error when the zero mode exceeds `tol * coeff_l2`.
    pub fn require_mean_zero(&self, tol: f64) -> Result<(), SpectralError> {
        let mean = self.mean_coeff().norm();
        let size = self.coeff_l2().max(f64::MIN_POSITIVE);
        if mean > tol * size {
            return Err(SpectralError::NonZeroMean { mean, tol });
        }
        Ok(())
    }

    /// Partial derivative along `axis` (spectral, exact on the resolved band).
    pub fn derivative(&self, axis: usize) -> Self {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            let xi = self.grid.xi_at(i);
            *c *= Complex::new(0.0, xi[axis]);
        }
        out
    }
}

/// A `dim`-component vector field stored spectrally.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    components: Vec<SpectralField>,
}

impl VectorField {
    pub fn zeros(grid: &Grid) -> Self {
        VectorField {
            components: (0..grid.dim()).map(|_| SpectralField::zeros(grid)).collect(),
        }
    }

    pub fn from_components(components: Vec<SpectralField>) -> Result<Self, SpectralError> {
        let grid = components[0].grid().clone();
        if components.len() != grid.dim() {
            return Err(SpectralError::ShapeMismatch {
                expected: grid.dim(),
                got: components.len(),
            });
        }
        for c in &components {
            if *c.grid() != grid {
                return Err(SpectralError::GridMismatch);
            }
        }
        Ok(VectorField { components })
    }

    pub fn grid(&self) -> &Grid {
        self.components[0].grid()
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, a: usize) -> &SpectralField {
        &self.components[a]
    }

    pub fn component_mut(&mut self, a: usize) -> &mut SpectralField {
        &mut self.components[a]
    }

    pub fn components(&self) -> &[SpectralField] {
        &self.components
    }

    pub fn dealias(&mut self) {
        for c in &mut self.components {
            c.dealias();
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            a.add_assign(b);
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            a.sub_assign(b);
        }
    }

    pub fn axpy(&mut self, a: Complex, other: &Self) {
        for (s, o) in self.components.iter_mut().zip(&other.components) {
            s.axpy(a, o);
        }
    }

    pub fn scale(&mut self, a: Complex) {
        for c in &mut self.components {
            c.scale(a);
        }
    }

    /// Spectral divergence `i xi . u`.
    pub fn divergence(&self) -> SpectralField {
        let grid = self.grid().clone();
        let mut out = SpectralField::zeros(&grid);
        for (i, c) in out.coeffs_mut().iter_mut().enumerate() {
            let xi = grid.xi_at(i);
            let mut acc = Complex::ZERO;
            for a in 0..self.components.len() {
                acc += Complex::new(0.0, xi[a]) * self.components[a].coeffs()[i];
            }
            *c = acc;
        }
        out
    }
}

/// Spectral gradient of a scalar field.
pub fn gradient(f: &SpectralField) -> VectorField {
    let grid = f.grid().clone();
    let mut out = VectorField::zeros(&grid);
    for a in 0..grid.dim() {
        let comp = out.component_mut(a);
        for (i, c) in comp.coeffs_mut().iter_mut().enumerate() {
            let xi = grid.xi_at(i);
            *c = Complex::new(0.0, xi[a]) * f.coeffs()[i];
        }
    }
    out
}
