//! Seeded synthetic fields for experiments and tests.

use crate::field::{SpectralField, VectorField};
use crate::grid::Grid;
use crate::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random real (Hermitian-symmetric) band-limited field with smooth spectral
/// decay inside `|xi| <= band`, nonzero mean removed, normalized so the
/// largest coefficient modulus is `amplitude`.
pub fn random_real_field(grid: &Grid, seed: u64, band: f64, amplitude: f64) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = SpectralField::zeros(grid);
    // fill independent draws, then symmetrize
    let raw: Vec<Complex> = (0..grid.len())
        .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    for i in 0..grid.len() {
        let r2 = grid.xi_norm_sq(i);
        if r2 > band * band || i == 0 {
            continue;
        }
        if !grid.dealias_keep(i) {
            continue;
        }
        let j = grid.conjugate_index(i);
        let decay = (-r2 / (band * band).max(1e-30) * 2.0).exp();
        let v = raw[i.min(j)] * decay;
        f.coeffs_mut()[i] = if i <= j { v } else { v.conj() };
    }
    // self-conjugate modes (k = -k on the lattice) must be real
    for i in 0..grid.len() {
        if grid.conjugate_index(i) == i {
            let c = f.coeffs()[i];
            f.coeffs_mut()[i] = Complex::new(c.re, 0.0);
        }
    }
    let peak = f
        .coeffs()
        .iter()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    f.scale(Complex::new(amplitude / peak, 0.0));
    f
}

/// Random real band-limited vector field (independent components).
pub fn random_real_vector_field(grid: &Grid, seed: u64, band: f64, amplitude: f64) -> VectorField {
    let comps = (0..grid.dim())
        .map(|a| random_real_field(grid, seed.wrapping_add(0x9e37 + a as u64), band, amplitude))
        .collect();
    VectorField::from_components(comps).expect("components share the grid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_field_is_hermitian_and_mean_zero() {
        let g = Grid::new(2, 16, 2.0 * std::f64::consts::PI, 2.0 / 3.0).unwrap();
        let f = random_real_field(&g, 42, 5.0, 0.3);
        assert!(f.hermitian_defect() < 1e-14);
        assert_eq!(f.mean_coeff(), Complex::ZERO);
        let phys = crate::fft::inverse_transform(&f);
        let max_im = phys.iter().map(|c| c.im.abs()).fold(0.0f64, f64::max);
        assert!(max_im < 1e-13);
    }

    #[test]
    fn deterministic_across_calls() {
        let g = Grid::new(1, 32, 1.0, 1.0).unwrap();
        let a = random_real_field(&g, 9, 40.0, 1.0);
        let b = random_real_field(&g, 9, 40.0, 1.0);
        assert_eq!(a.coeffs(), b.coeffs());
    }
}
