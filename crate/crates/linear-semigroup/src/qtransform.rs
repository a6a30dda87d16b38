//! Low-frequency diagonalizers. With eigenvalues `lambda_+/-` and wave symbol
//! `w`, the columns of `Q` are the eigenvectors of `A` and
//! `Q^{-1} = [[lambda_+, w], [-lambda_-, -w]] / (2 i b)`; in `R = Q^{-1} V`
//! variables the linear flow is diagonal, `r1(t) = e^{lambda_- t} r1(0)`,
//! `r2(t) = e^{lambda_+ t} r2(0)`.

use crate::dispersion::{DispersionSymbol, Variant};
use crate::error::SemigroupError;
use crate::Complex;
use spectral_core::{CutoffParams, SpectralField};

/// Relative energy allowed outside the cutoff support before the transform
/// refuses to run.
pub const SUPPORT_TOL: f64 = 1e-10;

fn check_support(
    params: &CutoffParams,
    fields: &[&SpectralField],
) -> Result<(), SemigroupError> {
    let grid = fields[0].grid();
    let rmax = params.support_radius();
    let mut outside = 0.0f64;
    let mut total = 0.0f64;
    for f in fields {
        for i in 0..grid.len() {
            let e = f.coeffs()[i].norm_sqr();
            total += e;
            if grid.xi_norm_sq(i).sqrt() > rmax {
                outside += e;
            }
        }
    }
    let fraction = (outside / total.max(f64::MIN_POSITIVE)).sqrt();
    if fraction > SUPPORT_TOL {
        return Err(SemigroupError::OutsideCutoffSupport {
            fraction,
            tol: SUPPORT_TOL,
        });
    }
    Ok(())
}

#[inline]
fn q_inv_entries(disp: &DispersionSymbol, r: f64) -> Option<(Complex, Complex, Complex)> {
    // returns (lambda_+, lambda_-, 1/(2ib)); None when b vanishes (ion r = 0)
    let b = disp.b_value(r).ok()?;
    if b == 0.0 {
        return None;
    }
    let (lp, lm) = disp.eigenvalues(r);
    let inv2ib = Complex::new(0.0, -1.0) / (2.0 * b); // 1/(2ib) = -i/(2b)
    Some((lp, lm, inv2ib))
}

/// `R = Q^{-1} V` on a low-frequency symmetrized pair `(h, c)`.
pub fn q_transform(
    disp: &DispersionSymbol,
    params: &CutoffParams,
    h: &SpectralField,
    c: &SpectralField,
) -> Result<(SpectralField, SpectralField), SemigroupError> {
    h.check_same_grid(c)?;
    check_support(params, &[h, c])?;
    let grid = h.grid().clone();
    let mut r1 = SpectralField::zeros(&grid);
    let mut r2 = SpectralField::zeros(&grid);
    for i in 0..grid.len() {
        let r = grid.xi_norm_sq(i).sqrt();
        if r > params.support_radius() {
            continue; // only roundoff-level energy lives here
        }
        let (hv, cv) = (h.coeffs()[i], c.coeffs()[i]);
        match q_inv_entries(disp, r) {
            Some((lp, lm, inv2ib)) => {
                let w = Complex::new(disp.wave_symbol(r), 0.0);
                r1.coeffs_mut()[i] = (lp * hv + w * cv) * inv2ib;
                r2.coeffs_mut()[i] = (-lm * hv - w * cv) * inv2ib;
            }
            None => {
                // ion zero mode: assigned identity
                r1.coeffs_mut()[i] = hv;
                r2.coeffs_mut()[i] = cv;
            }
        }
    }
    Ok((r1, r2))
}

/// `V = Q R` inverse map.
pub fn q_inverse(
    disp: &DispersionSymbol,
    params: &CutoffParams,
    r1: &SpectralField,
    r2: &SpectralField,
) -> Result<(SpectralField, SpectralField), SemigroupError> {
    r1.check_same_grid(r2)?;
    check_support(params, &[r1, r2])?;
    let grid = r1.grid().clone();
    let mut h = SpectralField::zeros(&grid);
    let mut c = SpectralField::zeros(&grid);
    for i in 0..grid.len() {
        let r = grid.xi_norm_sq(i).sqrt();
        if r > params.support_radius() {
            continue;
        }
        let (a, b) = (r1.coeffs()[i], r2.coeffs()[i]);
        match q_inv_entries(disp, r) {
            Some((lp, lm, _)) => {
                let w = Complex::new(disp.wave_symbol(r), 0.0);
                h.coeffs_mut()[i] = a + b;
                c.coeffs_mut()[i] = (-lm * a - lp * b) / w;
            }
            None => {
                h.coeffs_mut()[i] = a;
                c.coeffs_mut()[i] = b;
            }
        }
    }
    Ok((h, c))
}

/// Diagonal flow in `R` variables: `r1 -> e^{lambda_- t} r1`,
/// `r2 -> e^{lambda_+ t} r2`.
pub fn diagonal_flow(
    t: f64,
    disp: &DispersionSymbol,
    r1: &SpectralField,
    r2: &SpectralField,
) -> (SpectralField, SpectralField) {
    let grid = r1.grid().clone();
    let mut o1 = r1.clone();
    let mut o2 = r2.clone();
    for i in 0..grid.len() {
        let r = grid.xi_norm_sq(i).sqrt();
        let (lp, lm) = disp.eigenvalues(r);
        o1.coeffs_mut()[i] *= (lm * t).exp();
        o2.coeffs_mut()[i] *= (lp * t).exp();
    }
    (o1, o2)
}

/// Klein-Gordon limit of the `Q` matrix at `eps -> 0` (electron):
/// columns `(1, i)` and `(1, -i)` up to phase. Exposed for the limit checks.
pub fn q_matrix(disp: &DispersionSymbol, r: f64) -> Option<[[Complex; 2]; 2]> {
    let b = disp.b_value(r).ok()?;
    if b == 0.0 && disp.variant == Variant::Ion {
        return None;
    }
    let (lp, lm) = disp.eigenvalues(r);
    let w = Complex::new(disp.wave_symbol(r), 0.0);
    Some([
        [Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)],
        [-lm / w, -lp / w],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::apply_semigroup;
    use spectral_core::cutoff::low_high_split;
    use spectral_core::{Grid, SpectralField};

    fn low_freq_pair(eps: f64) -> (CutoffParams, SpectralField, SpectralField) {
        let grid = Grid::new(2, 32, 2.0 * std::f64::consts::PI * 10.0, 1.0).unwrap();
        let params = CutoffParams::new(eps, CutoffParams::DEFAULT_KAPPA0).unwrap();
        let h = spectral_core::synth::random_real_field(&grid, 8, 30.0, 1.0);
        let c = spectral_core::synth::random_real_field(&grid, 9, 30.0, 1.0);
        let (h_lo, _) = low_high_split(&h, &params);
        let (c_lo, _) = low_high_split(&c, &params);
        (params, h_lo, c_lo)
    }

    #[test]
    fn roundtrip_is_identity_on_low_frequencies() {
        for variant in [Variant::Electron, Variant::Ion] {
            let eps = 0.02;
            let disp = DispersionSymbol::new(variant, eps);
            let (params, h, c) = low_freq_pair(eps);
            let (r1, r2) = q_transform(&disp, &params, &h, &c).unwrap();
            let (h2, c2) = q_inverse(&disp, &params, &r1, &r2).unwrap();
            let defect = h2.diff_with(&h).coeff_l2() + c2.diff_with(&c).coeff_l2();
            let size = h.coeff_l2() + c.coeff_l2();
            assert!(defect <= 1e-12 * size, "{variant:?}: defect {defect}");
        }
    }

    #[test]
    fn rejects_high_frequency_energy() {
        let eps = 0.5;
        let disp = DispersionSymbol::new(Variant::Electron, eps);
        let grid = Grid::new(1, 64, 2.0 * std::f64::consts::PI, 1.0).unwrap();
        let params = CutoffParams::new(eps, CutoffParams::DEFAULT_KAPPA0).unwrap();
        let h = SpectralField::single_mode(&grid, &[20, 0, 0], Complex::new(1.0, 0.0)).unwrap();
        let c = SpectralField::zeros(&grid);
        assert!(q_transform(&disp, &params, &h, &c).is_err());
    }

    #[test]
    fn diagonal_flow_matches_semigroup_conjugation() {
        let eps = 0.02;
        let disp = DispersionSymbol::new(Variant::Electron, eps);
        let (params, h, c) = low_freq_pair(eps);
        let t = 3.0;
        let (hs, cs) = apply_semigroup(t, &disp, &h, &c);
        let (r1, r2) = q_transform(&disp, &params, &h, &c).unwrap();
        let (f1, f2) = diagonal_flow(t, &disp, &r1, &r2);
        let (hq, cq) = q_inverse(&disp, &params, &f1, &f2).unwrap();
        let size = hs.coeff_l2() + cs.coeff_l2();
        let defect = hq.diff_with(&hs).coeff_l2() + cq.diff_with(&cs).coeff_l2();
        assert!(defect <= 1e-10 * size, "two-path defect {}", defect / size);
    }

    #[test]
    fn klein_gordon_eigenvector_limit() {
        let disp = DispersionSymbol::new(Variant::Electron, 1e-12);
        let q = q_matrix(&disp, 0.9).unwrap();
        // -lambda_-/w -> i <xi>/<xi> = i, -lambda_+/w -> -i
        assert!((q[1][0] - Complex::new(0.0, 1.0)).norm() < 1e-9);
        assert!((q[1][1] - Complex::new(0.0, -1.0)).norm() < 1e-9);
    }

    #[test]
    fn ion_zero_mode_assigned_identity() {
        let eps = 0.1;
        let disp = DispersionSymbol::new(Variant::Ion, eps);
        let grid = Grid::new(1, 64, 2.0 * std::f64::consts::PI * 20.0, 1.0).unwrap();
        let params = CutoffParams::new(eps, CutoffParams::DEFAULT_KAPPA0).unwrap();
        let mut h = SpectralField::zeros(&grid);
        h.coeffs_mut()[0] = Complex::new(0.4, 0.0);
        let c = SpectralField::zeros(&grid);
        let (r1, r2) = q_transform(&disp, &params, &h, &c).unwrap();
        assert_eq!(r1.coeffs()[0], Complex::new(0.4, 0.0));
        assert_eq!(r2.coeffs()[0], Complex::ZERO);
        let (h2, _) = q_inverse(&disp, &params, &r1, &r2).unwrap();
        assert_eq!(h2.coeffs()[0], Complex::new(0.4, 0.0));
    }
}
