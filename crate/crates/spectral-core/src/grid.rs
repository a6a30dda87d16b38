use crate::error::SpectralError;
use std::f64::consts::PI;

/// Rectangular periodic grid, identical in every axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    dim: usize,
    n: usize,
    box_length: f64,
    dealias_fraction: f64,
}

impl Grid {
    /// Build a grid; `n` must be a power of two (>= 8), `dim` in 1..=3.
    pub fn new(
        dim: usize,
        n: usize,
        box_length: f64,
        dealias_fraction: f64,
    ) -> Result<Self, SpectralError> {
        if !(1..=3).contains(&dim) {
            return Err(SpectralError::BadDim(dim));
        }
        if !n.is_power_of_two() || n < 8 {
            return Err(SpectralError::BadPoints(n));
        }
        if !(box_length.is_finite() && box_length > 0.0) {
            return Err(SpectralError::BadBoxLength(box_length));
        }
        if !(dealias_fraction > 0.0 && dealias_fraction <= 1.0) {
            return Err(SpectralError::BadDealiasFraction(dealias_fraction));
        }
        Ok(Grid {
            dim,
            n,
            box_length,
            dealias_fraction,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_axis(&self) -> usize {
        self.n
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    pub fn dealias_fraction(&self) -> f64 {
        self.dealias_fraction
    }

    /// Total number of lattice points `n^dim`.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Physical volume of the box, `L^dim`.
    pub fn volume(&self) -> f64 {
        self.box_length.powi(self.dim as i32)
    }

    /// Collocation spacing `L/n`.
    pub fn spacing(&self) -> f64 {
        self.box_length / self.n as f64
    }

    /// Frequency spacing `2*pi/L`.
    pub fn freq_spacing(&self) -> f64 {
        2.0 * PI / self.box_length
    }

    /// Integer wavenumber along one axis for FFT-ordered index `i`.
    #[inline]
    pub fn axis_k(&self, i: usize) -> i64 {
        debug_assert!(i < self.n);
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Decompose a flat index into per-axis FFT indices (row-major, axis 0 slowest).
    #[inline]
    pub fn unravel(&self, mut flat: usize) -> [usize; 3] {
        let mut idx = [0usize; 3];
        for a in (0..self.dim).rev() {
            idx[a] = flat % self.n;
            flat /= self.n;
        }
        idx
    }

    /// Integer wavenumbers for a flat index; unused axes are zero.
    #[inline]
    pub fn k_at(&self, flat: usize) -> [i64; 3] {
        let idx = self.unravel(flat);
        let mut k = [0i64; 3];
        for a in 0..self.dim {
            k[a] = self.axis_k(idx[a]);
        }
        k
    }

    /// Frequency vector `xi = (2*pi/L) k` for a flat index; unused axes are zero.
    #[inline]
    pub fn xi_at(&self, flat: usize) -> [f64; 3] {
        let k = self.k_at(flat);
        let h = self.freq_spacing();
        [k[0] as f64 * h, k[1] as f64 * h, k[2] as f64 * h]
    }

    #[inline]
    pub fn xi_norm_sq(&self, flat: usize) -> f64 {
        let xi = self.xi_at(flat);
        xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]
    }

    /// True when the mode survives the dealias mask
    /// (all `|k_a| <= dealias_fraction * n/2`).
    #[inline]
    pub fn dealias_keep(&self, flat: usize) -> bool {
        let k = self.k_at(flat);
        let cap = self.dealias_fraction * (self.n as f64) / 2.0;
        (0..self.dim).all(|a| (k[a].unsigned_abs() as f64) <= cap)
    }

    /// Flat index of the conjugate mode `-k` (wrapping on each axis).
    #[inline]
    pub fn conjugate_index(&self, flat: usize) -> usize {
        let idx = self.unravel(flat);
        let mut out = 0usize;
        for a in 0..self.dim {
            let j = (self.n - idx[a]) % self.n;
            out = out * self.n + j;
        }
        out
    }

    /// Flat index from integer wavenumbers, or `None` when any axis falls
    /// outside `[-n/2, n/2)`.
    #[inline]
    pub fn index_of_k(&self, k: &[i64; 3]) -> Option<usize> {
        let half = self.n as i64 / 2;
        let mut out = 0usize;
        for a in 0..self.dim {
            if k[a] < -half || k[a] >= half {
                return None;
            }
            let i = if k[a] >= 0 { k[a] } else { k[a] + self.n as i64 } as usize;
            out = out * self.n + i;
        }
        Some(out)
    }

    /// Physical coordinates of a flat collocation index.
    #[inline]
    pub fn x_at(&self, flat: usize) -> [f64; 3] {
        let idx = self.unravel(flat);
        let h = self.spacing();
        let mut x = [0.0; 3];
        for a in 0..self.dim {
            x[a] = idx[a] as f64 * h;
        }
        x
    }

    /// Largest dealiased `|xi|` resolved by the grid.
    pub fn max_dealiased_freq(&self) -> f64 {
        let cap = (self.dealias_fraction * self.n as f64 / 2.0).floor();
        cap * self.freq_spacing() * (self.dim as f64).sqrt()
    }
}

/// Spec-facing constructor.
pub fn make_grid(
    dim: usize,
    n: usize,
    box_length: f64,
    dealias_fraction: f64,
) -> Result<Grid, SpectralError> {
    Grid::new(dim, n, box_length, dealias_fraction)
}
