//! Whole-space propagator values on radial data.

use crate::bessel::j0;
use crate::error::OracleError;
use crate::profile::RadialProfile;
use crate::quadrature::integrate_adaptive;
use crate::Complex;
use linear_semigroup::DispersionSymbol;
use spectral_core::cutoff::chi;
use std::f64::consts::PI;

/// Fourier transform of the unit-sphere surface measure,
/// `K_d(s) = |s|^{-(d-2)/2} J_{(d-2)/2}(s)` with the full measure constant:
/// `K_3(s) = 4 pi sin(s)/s`, `K_2(s) = 2 pi J_0(s)`.
pub fn sphere_kernel(d: usize, s: f64) -> f64 {
    match d {
        3 => {
            if s.abs() < 1e-4 {
                let q = s * s;
                4.0 * PI * (1.0 - q / 6.0 + q * q / 120.0)
            } else {
                4.0 * PI * s.sin() / s
            }
        }
        2 => 2.0 * PI * j0(s),
        _ => panic!("sphere_kernel defined for d in {{2, 3}}"),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PropagatorOptions {
    /// Absolute quadrature error target.
    pub abs_tol: f64,
    /// Hard cap on adaptive panels.
    pub max_panels: usize,
    /// Multiplier on the phase-derived panel width cap (1.0 = spec cap).
    pub width_scale: f64,
}

impl Default for PropagatorOptions {
    fn default() -> Self {
        PropagatorOptions {
            abs_tol: 1e-9,
            max_panels: 60_000,
            width_scale: 1.0,
        }
    }
}

/// `u(t, x) = (2 pi)^{-d} int_0^inf e^{i t b(r)} chi_{eps,kappa0}(r) f^(r)
/// K_d(|x| r) r^{d-1} dr` by oscillation-aware adaptive quadrature.
pub fn propagator_point(
    t: f64,
    x: f64,
    profile: &RadialProfile,
    disp: &DispersionSymbol,
    kappa0: f64,
    d: usize,
    opts: &PropagatorOptions,
) -> Result<Complex, OracleError> {
    if !(d == 2 || d == 3) {
        return Err(OracleError::BadDimension(d));
    }
    let scaling = (disp.epsilon / kappa0).sqrt();
    let support = 2.0 / scaling; // chi support end
    let rmax = support.min(profile.tail_radius());
    if profile.tail_radius() <= support {
        // profile tail (not the cutoff zero) terminates the range; make sure
        // the truncated mass is negligible
        profile.check_tail(rmax)?;
    }
    let x = x.abs();
    let t_abs = t.abs();
    let integrand = |r: f64| -> Complex {
        if r <= 0.0 {
            return Complex::ZERO;
        }
        let cut = chi(scaling * r);
        if cut == 0.0 {
            return Complex::ZERO;
        }
        let b = disp.b_value(r).unwrap_or(0.0);
        let amp = cut * profile.eval(r) * sphere_kernel(d, x * r) * r.powi((d - 1) as i32);
        Complex::from_polar(1.0, t * b) * amp
    };
    // panel width <= pi / (4 max(|t b'|, |x|)) locally
    let width_cap = |r: f64| -> f64 {
        let bp = disp.b_prime(r.clamp(0.0, rmax)).unwrap_or(1.0).abs();
        let rate = (t_abs * bp).max(x).max(1.0 / rmax);
        opts.width_scale * PI / (4.0 * rate)
    };
    let val = integrate_adaptive(integrand, 0.0, rmax, width_cap, opts.abs_tol, opts.max_panels)?;
    Ok(val / (2.0 * PI).powi(d as i32))
}
