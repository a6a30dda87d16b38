//! Radial frequency cutoffs.
//!
//! The profile is pinned for reproducibility: `bump(s, a, b)` equals 1 for
//! `s <= a`, 0 for `s >= b`, and `exp(1 - 1/(1 - u^2))` with
//! `u = (s-a)/(b-a)` in between. `chi` uses plateau 1 / support 2,
//! `chi_tilde` plateau 3 / support 4, both composed with `sqrt(eps/kappa0)`
//! scaling. Reports carry [`profile_hash`] so bound constants can be tied to
//! this exact choice.

use crate::error::SpectralError;
use crate::field::SpectralField;
use crate::Complex;
use sha2::{Digest, Sha256};

/// Smooth plateau/rolloff bump on `[a, b]`.
#[inline]
pub fn bump(s: f64, a: f64, b: f64) -> f64 {
    let s = s.abs();
    if s <= a {
        1.0
    } else if s >= b {
        0.0
    } else {
        let u = (s - a) / (b - a);
        (1.0 - 1.0 / (1.0 - u * u)).exp()
    }
}

/// Base profile: 1 on `|z| <= 1`, 0 on `|z| >= 2`.
#[inline]
pub fn chi(z: f64) -> f64 {
    bump(z, 1.0, 2.0)
}

/// Wide profile: 1 on `|z| <= 3`, 0 on `|z| >= 4`.
#[inline]
pub fn chi_tilde(z: f64) -> f64 {
    bump(z, 3.0, 4.0)
}

/// SHA-256 over fixed samples of the base profile; identifies the rolloff
/// choice in run manifests.
pub fn profile_hash() -> String {
    let mut h = Sha256::new();
    for i in 0..=4096u32 {
        let s = 4.0 * f64::from(i) / 4096.0;
        h.update(chi(s).to_le_bytes());
        h.update(chi_tilde(s).to_le_bytes());
    }
    let digest = h.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Viscosity/threshold pair `(eps, kappa0)` entering the scaled cutoff
/// `chi(sqrt(eps/kappa0) xi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffParams {
    pub epsilon: f64,
    pub kappa0: f64,
}

impl CutoffParams {
    pub const DEFAULT_KAPPA0: f64 = 1.0 / 200.0;

    pub fn new(epsilon: f64, kappa0: f64) -> Result<Self, SpectralError> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(SpectralError::BadParam {
                name: "epsilon",
                reason: format!("must lie in (0, 1], got {epsilon}"),
            });
        }
        if !(kappa0 > 0.0 && kappa0.is_finite()) {
            return Err(SpectralError::BadParam {
                name: "kappa0",
                reason: format!("must be positive, got {kappa0}"),
            });
        }
        Ok(CutoffParams { epsilon, kappa0 })
    }

    pub fn with_default_kappa0(epsilon: f64) -> Result<Self, SpectralError> {
        Self::new(epsilon, Self::DEFAULT_KAPPA0)
    }

    /// Scale factor `sqrt(eps/kappa0)` applied to the frequency.
    #[inline]
    pub fn scaling(&self) -> f64 {
        (self.epsilon / self.kappa0).sqrt()
    }

    /// `chi_{eps,kappa0}(xi)` as a function of `r = |xi|`.
    #[inline]
    pub fn chi_at(&self, r: f64) -> f64 {
        chi(self.scaling() * r)
    }

    /// `chi~_{eps,kappa0}(xi)` as a function of `r = |xi|`.
    #[inline]
    pub fn chi_tilde_at(&self, r: f64) -> f64 {
        chi_tilde(self.scaling() * r)
    }

    /// Radius where the plateau of `chi` ends (`eps r^2 = kappa0`).
    pub fn plateau_radius(&self) -> f64 {
        (self.kappa0 / self.epsilon).sqrt()
    }

    /// Radius where the support of `chi` ends (`eps r^2 = 4 kappa0`).
    pub fn support_radius(&self) -> f64 {
        2.0 * (self.kappa0 / self.epsilon).sqrt()
    }

    /// Radius where the support of `chi~` ends (`eps r^2 = 16 kappa0`).
    pub fn tilde_support_radius(&self) -> f64 {
        4.0 * (self.kappa0 / self.epsilon).sqrt()
    }
}

/// Split `f` into low and high parts, `f = f_L + f_H` with
/// `f_L = chi_{eps,kappa0}(D) f`; the sum reconstructs `f` exactly because the
/// high part is computed as the coefficient-wise remainder.
pub fn low_high_split(f: &SpectralField, params: &CutoffParams) -> (SpectralField, SpectralField) {
    let mut low = f.clone();
    let mut high = f.clone();
    let grid = f.grid().clone();
    for i in 0..grid.len() {
        let r = grid.xi_norm_sq(i).sqrt();
        let w = Complex::new(params.chi_at(r), 0.0);
        let c = f.coeffs()[i];
        low.coeffs_mut()[i] = w * c;
        high.coeffs_mut()[i] = c - w * c;
    }
    (low, high)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    #[test]
    fn profile_plateau_and_support() {
        assert_eq!(chi(0.3), 1.0);
        assert_eq!(chi(1.0), 1.0);
        assert_eq!(chi(2.0), 0.0);
        assert!(chi(1.5) > 0.0 && chi(1.5) < 1.0);
        assert_eq!(chi_tilde(2.9), 1.0);
        assert_eq!(chi_tilde(4.1), 0.0);
        // chi~ * chi = chi (chi~ is 1 on the support of chi)
        for s in [0.0, 0.5, 1.3, 1.9, 2.5] {
            assert_eq!(chi_tilde(s) * chi(s), chi(s));
        }
    }

    #[test]
    fn split_reconstructs_exactly() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = Grid::new(2, 16, 7.0, 1.0).unwrap();
        let coeffs: Vec<Complex> = (0..g.len())
            .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let f = SpectralField::from_coeffs(&g, coeffs).unwrap();
        let params = CutoffParams::new(0.05, CutoffParams::DEFAULT_KAPPA0).unwrap();
        let (lo, hi) = low_high_split(&f, &params);
        for i in 0..g.len() {
            let sum = lo.coeffs()[i] + hi.coeffs()[i];
            assert_eq!(sum, f.coeffs()[i], "bit-consistent reconstruction");
        }
    }

    #[test]
    fn split_respects_supports() {
        let g = Grid::new(1, 64, 2.0 * std::f64::consts::PI, 1.0).unwrap();
        let params = CutoffParams::new(1.0, 0.08).unwrap();
        // plateau: eps
        // r^2 <= kappa0  -> high part zero
        let r_lo = params.plateau_radius() * 0.9;
        let k = (r_lo / g.freq_spacing()).floor() as i64;
        let f = SpectralField::single_mode(&g, &[k.max(0), 0, 0], Complex::new(1.0, 0.0)).unwrap();
        let (_, hi) = low_high_split(&f, &params);
        assert!(hi.coeff_l2() < 1e-15);
        // outside support -> low part zero
        let r_hi = params.support_radius() * 1.1;
        let k = (r_hi / g.freq_spacing()).ceil() as i64;
        let f = SpectralField::single_mode(&g, &[k, 0, 0], Complex::new(1.0, 0.0)).unwrap();
        let (lo, _) = low_high_split(&f, &params);
        assert!(lo.coeff_l2() < 1e-15);
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(profile_hash(), profile_hash());
        assert_eq!(profile_hash().len(), 64);
    }
}
