//! Phase family and normal-form symbols.

use crate::Complex;
use linear_semigroup::{DispersionSymbol, Variant};
use spectral_core::cutoff::chi_tilde;

#[inline]
fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

#[inline]
fn add3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Phase data: variant, viscosity, cutoff threshold and the `(j, k)` signs.
#[derive(Debug, Clone, Copy)]
pub struct PhaseFamily {
    pub disp: DispersionSymbol,
    pub kappa0: f64,
    pub j: usize,
    pub k: usize,
}

impl PhaseFamily {
    pub fn new(variant: Variant, epsilon: f64, kappa0: f64, j: usize, k: usize) -> Self {
        assert!((1..=2).contains(&j) && (1..=2).contains(&k), "j, k in {{1, 2}}");
        PhaseFamily {
            disp: DispersionSymbol::new(variant, epsilon),
            kappa0,
            j,
            k,
        }
    }

    #[inline]
    fn b(&self, r: f64) -> f64 {
        // the phases live on the low-frequency support where the radicand is
        // positive; clamp defensively for far-out probe points
        self.disp.radicand(r).max(0.0).sqrt()
    }

    /// `phi_jk(xi, eta)`.
    #[inline]
    pub fn value(&self, xi: &[f64; 3], eta: &[f64; 3]) -> f64 {
        let sj = if self.j == 1 { 1.0 } else { -1.0 };
        let sk = if self.k == 1 { 1.0 } else { -1.0 };
        sj * self.b(norm3(xi)) + sk * self.b(norm3(eta)) - self.b(norm3(&add3(xi, eta)))
    }
}

/// `phi_jk` at explicit signs.
pub fn phase_value(family: &PhaseFamily, xi: &[f64; 3], eta: &[f64; 3]) -> f64 {
    family.value(xi, eta)
}

/// `A(xi, eta) = (b(xi) + b(eta))^2 - b(xi + eta)^2`.
pub fn quantity_a(disp: &DispersionSymbol, xi: &[f64; 3], eta: &[f64; 3]) -> f64 {
    let b = |r: f64| disp.radicand(r).max(0.0).sqrt();
    let s = b(norm3(xi)) + b(norm3(eta));
    let bo = b(norm3(&add3(xi, eta)));
    s * s - bo * bo
}

/// Expanded form of `A` (electron):
/// `1 + 2 b(xi) b(eta) - 2 xi.eta - eps^2 (|xi|^4 + |eta|^4 - |xi+eta|^4)`.
pub fn quantity_a_expanded(eps: f64, xi: &[f64; 3], eta: &[f64; 3]) -> f64 {
    let disp = DispersionSymbol::new(Variant::Electron, eps);
    let b = |r: f64| disp.radicand(r).max(0.0).sqrt();
    let rx = norm3(xi);
    let re = norm3(eta);
    let ro = norm3(&add3(xi, eta));
    let dot = xi[0] * eta[0] + xi[1] * eta[1] + xi[2] * eta[2];
    1.0 + 2.0 * b(rx) * b(re) - 2.0 * dot
        - eps * eps * (rx.powi(4) + re.powi(4) - ro.powi(4))
}

/// Normal-form symbol family built on a phase family:
/// `m(zeta, eta) = chi~(zeta) chi~(eta) chi~(zeta+eta) <zeta+eta> / (2 i b(zeta+eta))`
/// (electron coupling), with the divided variants `m/phi` and `m/phi^2`.
#[derive(Debug, Clone, Copy)]
pub struct NormalFormSymbol {
    pub family: PhaseFamily,
}

impl NormalFormSymbol {
    pub fn new(family: PhaseFamily) -> Self {
        NormalFormSymbol { family }
    }

    #[inline]
    fn tilde(&self, r: f64) -> f64 {
        chi_tilde((self.family.disp.epsilon / self.family.kappa0).sqrt() * r)
    }

    /// `m(zeta, eta)`; zero outside the triple cutoff support.
    pub fn m(&self, zeta: &[f64; 3], eta: &[f64; 3]) -> Complex {
        let out = add3(zeta, eta);
        let cut = self.tilde(norm3(zeta)) * self.tilde(norm3(eta)) * self.tilde(norm3(&out));
        if cut == 0.0 {
            return Complex::ZERO;
        }
        let ro = norm3(&out);
        let b = self.family.b(ro);
        let wave = self.family.disp.wave_symbol(ro);
        // <zeta+eta> / (2 i b); b >= sqrt(1 - 16 kappa0^2) > 0 on the support
        // for the electron branch
        Complex::new(cut * wave, 0.0) / Complex::new(0.0, 2.0 * b)
    }

    /// `(m / phi_jk)(zeta, eta)`.
    pub fn m_over_phi(&self, zeta: &[f64; 3], eta: &[f64; 3]) -> Complex {
        let m = self.m(zeta, eta);
        if m == Complex::ZERO {
            return Complex::ZERO;
        }
        m / self.family.value(zeta, eta)
    }

    /// `(m / phi_jk^2)(zeta, eta)`.
    pub fn m_over_phi_sq(&self, zeta: &[f64; 3], eta: &[f64; 3]) -> Complex {
        let m = self.m(zeta, eta);
        if m == Complex::ZERO {
            return Complex::ZERO;
        }
        let phi = self.family.value(zeta, eta);
        m / (phi * phi)
    }
}
