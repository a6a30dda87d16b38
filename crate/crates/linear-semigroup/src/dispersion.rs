use crate::error::SemigroupError;
use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Electron,
    Ion,
}

/// Dispersion data for one variant at fixed viscosity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionSymbol {
    pub variant: Variant,
    pub epsilon: f64,
}

impl DispersionSymbol {
    pub fn new(variant: Variant, epsilon: f64) -> Self {
        assert!(epsilon > 0.0 && epsilon <= 1.0, "epsilon in (0,1]");
        DispersionSymbol { variant, epsilon }
    }

    /// Ion acoustic branch `p(r) = r sqrt((2+r^2)/(1+r^2))`.
    #[inline]
    pub fn p(r: f64) -> f64 {
        r * ((2.0 + r * r) / (1.0 + r * r)).sqrt()
    }

    /// Off-diagonal (wave) symbol: `<r>` for electrons, `p(r)` for ions.
    #[inline]
    pub fn wave_symbol(&self, r: f64) -> f64 {
        match self.variant {
            Variant::Electron => (1.0 + r * r).sqrt(),
            Variant::Ion => Self::p(r),
        }
    }

    /// `b^2 = w^2 - eps^2 r^4`; positive in the oscillatory regime.
    #[inline]
    pub fn radicand(&self, r: f64) -> f64 {
        let w = self.wave_symbol(r);
        let a = self.epsilon * r * r;
        w * w - a * a
    }

    /// `b(r)`; errors when the radicand is negative.
    pub fn b_value(&self, r: f64) -> Result<f64, SemigroupError> {
        let rad = self.radicand(r);
        if rad < 0.0 {
            return Err(SemigroupError::NegativeRadicand { r, radicand: rad });
        }
        Ok(rad.sqrt())
    }

    /// `b~(r) = sqrt(-radicand)` in the overdamped regime.
    pub fn tilde_b_value(&self, r: f64) -> Result<f64, SemigroupError> {
        let rad = self.radicand(r);
        if rad > 0.0 {
            return Err(SemigroupError::NegativeRadicand { r, radicand: rad });
        }
        Ok((-rad).sqrt())
    }

    /// Eigenvalues of `-A(xi)`: `-eps r^2 +/- i b` while oscillatory,
    /// `-eps r^2 -/+ b~` once overdamped (continued through the crossing).
    pub fn eigenvalues(&self, r: f64) -> (Complex, Complex) {
        let a = self.epsilon * r * r;
        let rad = self.radicand(r);
        if rad >= 0.0 {
            let b = rad.sqrt();
            (Complex::new(-a, b), Complex::new(-a, -b))
        } else {
            let tb = (-rad).sqrt();
            (Complex::new(-a - tb, 0.0), Complex::new(-a + tb, 0.0))
        }
    }

    /// `b'(r)` in the oscillatory regime, via `b^2 = g(r)` and `b' = g'/(2b)`.
    pub fn b_prime(&self, r: f64) -> Result<f64, SemigroupError> {
        let b = self.b_value(r)?;
        let e2 = self.epsilon * self.epsilon;
        let gp = match self.variant {
            Variant::Electron => 2.0 * r - 4.0 * e2 * r * r * r,
            Variant::Ion => {
                let s = 1.0 + r * r;
                2.0 * r + 2.0 * r / (s * s) - 4.0 * e2 * r * r * r
            }
        };
        if b == 0.0 {
            // ion r = 0: b ~ sqrt(2) r, slope sqrt(2)
            return Ok(match self.variant {
                Variant::Electron => 0.0,
                Variant::Ion => 2.0f64.sqrt(),
            });
        }
        Ok(gp / (2.0 * b))
    }

    /// Radius at which the radicand vanishes (eigenvalue crossing).
    pub fn crossing_radius(&self) -> f64 {
        match self.variant {
            Variant::Electron => {
                // 1 + r^2 = eps^2 r^4
                let e2 = self.epsilon * self.epsilon;
                (((1.0 + (1.0 + 4.0 * e2).sqrt()) / (2.0 * e2)) as f64).sqrt()
            }
            Variant::Ion => {
                // p(r)^2 = eps^2 r^4, bisect on the radicand
                let mut lo = 0.5;
                let mut hi = 1.0;
                while self.radicand(hi) > 0.0 {
                    lo = hi;
                    hi *= 2.0;
                    if hi > 1e9 {
                        return f64::INFINITY;
                    }
                }
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if self.radicand(mid) > 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn electron_b_at_origin_and_unit() {
        for eps in [1e-3, 0.3, 1.0] {
            let d = DispersionSymbol::new(Variant::Electron, eps);
            assert_eq!(d.b_value(0.0).unwrap(), 1.0);
        }
        let d = DispersionSymbol::new(Variant::Electron, 1.0);
        assert!((d.b_value(1.0).unwrap() - 1.0).abs() < 1e-15); // sqrt(1+1-1)
    }

    #[test]
    fn ion_b_small_r_expansion() {
        // independent series oracle: p(r) = sqrt(2) r (1 - r^2/4 + O(r^4)),
        // so b = sqrt(2) r (1 + O(r^2)) uniformly in eps
        let d = DispersionSymbol::new(Variant::Ion, 0.5);
        for r in [1e-4, 1e-3, 1e-2] {
            let b = d.b_value(r).unwrap();
            let lead = 2.0f64.sqrt() * r;
            assert!(
                (b - lead).abs() < 1.0 * r * r * r + 1e-15,
                "r={r}: b={b} vs sqrt(2) r = {lead}"
            );
        }
    }

    #[test]
    fn overdamped_example() {
        // eps = 1, |xi| = 2: radicand = 1 + 4 - 16 = -11
        let d = DispersionSymbol::new(Variant::Electron, 1.0);
        let (lp, lm) = d.eigenvalues(2.0);
        let tb = 11.0f64.sqrt();
        assert!((lp - Complex::new(-4.0 - tb, 0.0)).norm() < 1e-12);
        assert!((lm - Complex::new(-4.0 + tb, 0.0)).norm() < 1e-12);
        assert!(d.b_value(2.0).is_err());
        assert!((d.tilde_b_value(2.0).unwrap() - tb).abs() < 1e-12);
    }

    #[test]
    fn vieta_product_is_wave_squared() {
        for eps in [1e-3, 0.2, 1.0] {
            let d = DispersionSymbol::new(Variant::Electron, eps);
            for r in [0.0, 0.5, 1.0, 2.0, 5.0, 20.0] {
                let (lp, lm) = d.eigenvalues(r);
                let prod = lp * lm;
                let expect = 1.0 + r * r;
                assert!(
                    (prod - Complex::new(expect, 0.0)).norm() < 1e-9 * expect,
                    "eps={eps} r={r}"
                );
            }
        }
    }

    #[test]
    fn eigenvalues_at_origin() {
        let d = DispersionSymbol::new(Variant::Electron, 0.7);
        let (lp, lm) = d.eigenvalues(0.0);
        assert_eq!(lp, Complex::new(0.0, 1.0));
        assert_eq!(lm, Complex::new(0.0, -1.0));
        // ion: b(0) = 0, both eigenvalues vanish
        let di = DispersionSymbol::new(Variant::Ion, 0.7);
        let (ip, im) = di.eigenvalues(0.0);
        assert_eq!(ip, Complex::ZERO);
        assert_eq!(im, Complex::ZERO);
    }

    #[test]
    fn crossing_radius_zeroes_radicand() {
        for variant in [Variant::Electron, Variant::Ion] {
            for eps in [0.05, 0.4, 1.0] {
                let d = DispersionSymbol::new(variant, eps);
                let rc = d.crossing_radius();
                assert!(d.radicand(rc).abs() < 1e-6 * (1.0 + rc * rc), "{variant:?} {eps}");
            }
        }
    }
}
