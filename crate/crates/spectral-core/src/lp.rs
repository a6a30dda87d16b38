//! Littlewood-Paley dyadic blocks built from the pinned bump profile:
//! `phi0` is 1 on `|xi| <= 1` and supported in `|xi| <= 2`;
//! `phi(xi) = phi0(xi) - phi0(2 xi)`, block `j >= 1` uses `phi(xi / 2^j)`,
//! block 0 uses `phi0`. The blocks telescope, so partial sums reproduce
//! `phi0(xi / 2^J)` exactly.

use crate::cutoff::bump;
use crate::field::SpectralField;
use crate::Complex;

/// `phi0`: plateau 1, support 2.
#[inline]
pub fn phi0(r: f64) -> f64 {
    bump(r, 1.0, 2.0)
}

/// Annular profile `phi(r) = phi0(r) - phi0(2r)`.
#[inline]
pub fn phi(r: f64) -> f64 {
    phi0(r) - phi0(2.0 * r)
}

/// Block weight for block `j` at radius `r`.
#[inline]
pub fn block_weight(j: usize, r: f64) -> f64 {
    if j == 0 {
        phi0(r)
    } else {
        phi(r / 2.0f64.powi(j as i32))
    }
}

/// `Delta_j f`.
pub fn littlewood_paley_block(f: &SpectralField, j: usize) -> SpectralField {
    let grid = f.grid().clone();
    let mut out = f.clone();
    for (i, c) in out.coeffs_mut().iter_mut().enumerate() {
        let r = grid.xi_norm_sq(i).sqrt();
        *c *= Complex::new(block_weight(j, r), 0.0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::norms::lp_norm;

    #[test]
    fn annulus_field_has_finitely_many_blocks() {
        // support in 1 <= |xi| <= 2 -> Delta_j = 0 for j >= 3
        let g = Grid::new(1, 64, 2.0 * std::f64::consts::PI, 1.0).unwrap();
        let mut f = SpectralField::zeros(&g);
        for k in [1i64, 2, -1, -2] {
            let idx = g.index_of_k(&[k, 0, 0]).unwrap();
            f.coeffs_mut()[idx] = Complex::new(1.0, 0.0);
        }
        for j in 3..8 {
            assert!(littlewood_paley_block(&f, j).coeff_l2() < 1e-15, "j={j}");
        }
    }

    #[test]
    fn partial_sums_reconstruct_band_limited() {
        let g = Grid::new(1, 64, 2.0 * std::f64::consts::PI, 1.0).unwrap();
        let f = crate::synth::random_real_field(&g, 5, 7.9, 1.0);
        // band |xi| < 8 = 2^3 -> sum over j <= 3 reconstructs (phi0(xi/8)=1 there)
        let mut sum = SpectralField::zeros(&g);
        for j in 0..=3 {
            sum.add_assign(&littlewood_paley_block(&f, j));
        }
        let defect = sum.diff_with(&f).coeff_l2();
        assert!(defect < 1e-13, "reconstruction defect {defect}");
    }

    #[test]
    fn single_dyadic_mode_besov_equals_sup() {
        // |xi| = 2^j sits where exactly one block weight is 1
        let g = Grid::new(1, 64, 2.0 * std::f64::consts::PI, 1.0).unwrap();
        let mut f = SpectralField::zeros(&g);
        for k in [4i64, -4] {
            let idx = g.index_of_k(&[k, 0, 0]).unwrap();
            f.coeffs_mut()[idx] = Complex::new(0.5, 0.0);
        }
        // f = cos(4x): sup norm 1
        let b = crate::norms::besov_norm(&f, 0.0, f64::INFINITY, 2.0).unwrap();
        let sup = lp_norm(&f, f64::INFINITY).unwrap();
        assert!((b - sup).abs() < 1e-12, "b={b} sup={sup}");
    }
}
