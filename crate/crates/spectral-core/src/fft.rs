//! Forward/inverse transforms between collocation samples and coefficients.
//!
//! Samples are row-major over the axes (axis 0 slowest). The forward transform
//! divides by `n^d` so a constant sample array maps to a single zero-mode
//! coefficient.

use crate::error::SpectralError;
use crate::field::SpectralField;
use crate::grid::Grid;
use crate::Complex;
use rustfft::FftPlanner;
use std::cell::RefCell;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn fft_all_axes(grid: &Grid, data: &mut [Complex], forward: bool) {
    let n = grid.points_per_axis();
    let dim = grid.dim();
    let fft = PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if forward {
            p.plan_fft_forward(n)
        } else {
            p.plan_fft_inverse(n)
        }
    });
    let total = grid.len();
    let mut line = vec![Complex::ZERO; n];
    for axis in 0..dim {
        // stride between consecutive entries along `axis` in row-major layout
        let stride = n.pow((dim - 1 - axis) as u32);
        let lines = total / n;
        for l in 0..lines {
            // base offset of the l-th line along this axis
            let block = l / stride;
            let inner = l % stride;
            let base = block * stride * n + inner;
            for j in 0..n {
                line[j] = data[base + j * stride];
            }
            fft.process(&mut line);
            for j in 0..n {
                data[base + j * stride] = line[j];
            }
        }
    }
}

/// Collocation samples -> coefficients.
pub fn forward_transform(grid: &Grid, samples: &[Complex]) -> Result<SpectralField, SpectralError> {
    if samples.len() != grid.len() {
        return Err(SpectralError::ShapeMismatch {
            expected: grid.len(),
            got: samples.len(),
        });
    }
    let mut data = samples.to_vec();
    fft_all_axes(grid, &mut data, true);
    let scale = 1.0 / grid.len() as f64;
    for c in &mut data {
        *c *= scale;
    }
    SpectralField::from_coeffs(grid, data)
}

/// Real samples convenience wrapper.
pub fn forward_transform_real(grid: &Grid, samples: &[f64]) -> Result<SpectralField, SpectralError> {
    if samples.len() != grid.len() {
        return Err(SpectralError::ShapeMismatch {
            expected: grid.len(),
            got: samples.len(),
        });
    }
    let data: Vec<Complex> = samples.iter().map(|&x| Complex::new(x, 0.0)).collect();
    forward_transform(grid, &data)
}

/// Coefficients -> collocation samples.
pub fn inverse_transform(field: &SpectralField) -> Vec<Complex> {
    let grid = field.grid();
    let mut data = field.coeffs().to_vec();
    fft_all_axes(grid, &mut data, false);
    data
}

/// Inverse transform keeping only the real part (valid for Hermitian fields).
pub fn inverse_transform_real(field: &SpectralField) -> Vec<f64> {
    inverse_transform(field).iter().map(|c| c.re).collect()
}

/// Direct `O(len^2)` DFT used as an independent oracle in tests.
pub fn dft_oracle(grid: &Grid, samples: &[Complex]) -> Vec<Complex> {
    let total = grid.len();
    let mut out = vec![Complex::ZERO; total];
    for (ik, o) in out.iter_mut().enumerate() {
        let xi = grid.xi_at(ik);
        let mut acc = Complex::ZERO;
        for (jx, s) in samples.iter().enumerate() {
            let x = grid.x_at(jx);
            let phase = -(xi[0] * x[0] + xi[1] * x[1] + xi[2] * x[2]);
            acc += s * Complex::from_polar(1.0, phase);
        }
        *o = acc / total as f64;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_maps_to_zero_mode() {
        let g = Grid::new(2, 8, 3.0, 1.0).unwrap();
        let f = forward_transform_real(&g, &vec![1.0; g.len()]).unwrap();
        assert!((f.coeffs()[0] - Complex::new(1.0, 0.0)).norm() < 1e-14);
        let rest: f64 = f.coeffs()[1..].iter().map(|c| c.norm()).sum();
        assert!(rest < 1e-13);
    }

    #[test]
    fn plane_wave_maps_to_single_coefficient() {
        let g = Grid::new(1, 16, 2.0 * std::f64::consts::PI, 1.0).unwrap();
        let k = [3i64, 0, 0];
        let samples: Vec<Complex> = (0..g.len())
            .map(|i| {
                let x = g.x_at(i);
                Complex::from_polar(1.0, 3.0 * x[0])
            })
            .collect();
        let f = forward_transform(&g, &samples).unwrap();
        let idx = g.index_of_k(&k).unwrap();
        for (i, c) in f.coeffs().iter().enumerate() {
            if i == idx {
                assert!((c - Complex::new(1.0, 0.0)).norm() < 1e-13);
            } else {
                assert!(c.norm() < 1e-13);
            }
        }
    }

    #[test]
    fn roundtrip_matches_direct_dft() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for dim in 1..=2usize {
            let g = Grid::new(dim, 8, 5.0, 1.0).unwrap();
            let samples: Vec<Complex> = (0..g.len())
                .map(|_| Complex::new(rng.gen_range(-1.0..1.0), 0.0))
                .collect();
            let f = forward_transform(&g, &samples).unwrap();
            let oracle = dft_oracle(&g, &samples);
            let worst = f
                .coeffs()
                .iter()
                .zip(&oracle)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            assert!(worst < 1e-12, "fft vs direct dft defect {worst}");
            let back = inverse_transform(&f);
            let rt = samples
                .iter()
                .zip(&back)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            assert!(rt < 1e-12, "roundtrip defect {rt}");
        }
    }

    #[test]
    fn shape_mismatch_rejected() {
        let g = Grid::new(2, 8, 1.0, 1.0).unwrap();
        assert!(forward_transform_real(&g, &vec![0.0; 17]).is_err());
    }
}
