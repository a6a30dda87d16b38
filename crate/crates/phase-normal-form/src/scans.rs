//! Grid scans for the phase lower bounds and the divided-symbol derivative
//! bounds. Points are parametrized by `(|xi|, |eta|, cos theta)`; by
//! rotation invariance this covers all `(xi, eta)` orbits, with the vectors
//! realized in the `e1`-`e2` plane for derivative stencils.

use crate::error::PhaseError;
use crate::phase::{NormalFormSymbol, PhaseFamily};
use linear_semigroup::Variant;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct PhaseBoundReport {
    pub eps: f64,
    pub kappa0: f64,
    pub grid_points: usize,
    pub min_phi11: f64,
    pub min_a: f64,
    pub a_bound: f64,
    /// `max (1/phi_11) / min(b(xi), b(eta), b(xi+eta))`.
    pub reciprocal_ratio: f64,
    pub pass: bool,
}

fn vectors(rx: f64, re: f64, ct: f64) -> ([f64; 3], [f64; 3]) {
    let st = (1.0 - ct * ct).max(0.0).sqrt();
    ([rx, 0.0, 0.0], [re * ct, re * st, 0.0])
}

/// Scan `phi_11` and `A` over the triple cutoff support with `n` points per
/// axis in `(|xi|, |eta|, cos theta)` (so `n^3` pairs per eps).
pub fn phase_bound_scan(eps: f64, kappa0: f64, n: usize) -> PhaseBoundReport {
    let fam = PhaseFamily::new(Variant::Electron, eps, kappa0, 1, 1);
    let rmax = 4.0 * (kappa0 / eps).sqrt(); // chi~ support
    let results: Vec<(f64, f64, f64)> = (0..n)
        .into_par_iter()
        .map(|ir| {
            let rx = rmax * (ir as f64 + 0.5) / n as f64;
            let mut min_phi = f64::INFINITY;
            let mut min_a = f64::INFINITY;
            let mut max_ratio = 0.0f64;
            for ie in 0..n {
                let re = rmax * (ie as f64 + 0.5) / n as f64;
                for ic in 0..n {
                    // push samples toward the near-parallel ends
                    let u = -1.0 + 2.0 * (ic as f64 + 0.5) / n as f64;
                    let ct = (0.5 * std::f64::consts::PI * u).sin();
                    let (xi, eta) = vectors(rx, re, ct);
                    let out = [xi[0] + eta[0], xi[1] + eta[1], 0.0];
                    let ro = (out[0] * out[0] + out[1] * out[1]).sqrt();
                    if ro > rmax {
                        continue; // outside the triple support
                    }
                    let phi = fam.value(&xi, &eta);
                    let a = crate::phase::quantity_a(&fam.disp, &xi, &eta);
                    min_phi = min_phi.min(phi);
                    min_a = min_a.min(a);
                    let bmin = fam
                        .disp
                        .b_value(rx)
                        .and_then(|bx| {
                            fam.disp.b_value(re).and_then(|be| {
                                fam.disp.b_value(ro).map(|bo| bx.min(be).min(bo))
                            })
                        })
                        .unwrap_or(1.0);
                    if phi > 0.0 {
                        max_ratio = max_ratio.max(1.0 / (phi * bmin));
                    }
                }
            }
            (min_phi, min_a, max_ratio)
        })
        .collect();
    let min_phi11 = results.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let min_a = results.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let reciprocal_ratio = results.iter().map(|r| r.2).fold(0.0, f64::max);
    let a_bound = 1.0 - 32.0 * kappa0 * kappa0;
    PhaseBoundReport {
        eps,
        kappa0,
        grid_points: n * n * n,
        min_phi11,
        min_a,
        a_bound,
        reciprocal_ratio,
        pass: min_phi11 > 0.0 && min_a >= a_bound,
    }
}

/// `C*` stability across grid refinements: consecutive ratios must stay
/// below `1.05`.
pub fn reciprocal_phase_refinement(eps: f64, kappa0: f64, levels: &[usize]) -> (Vec<f64>, bool) {
    let ratios: Vec<f64> = levels
        .iter()
        .map(|&n| phase_bound_scan(eps, kappa0, n).reciprocal_ratio)
        .collect();
    let stable = ratios
        .windows(2)
        .all(|w| w[1] / w[0] < 1.05 && w[0] / w[1] < 1.05);
    (ratios, stable)
}

#[derive(Debug, Clone, Serialize)]
pub struct DerivativeScanReport {
    pub eps: f64,
    pub kappa0: f64,
    pub j: usize,
    pub k: usize,
    /// `max |d^a d^b (m/phi)| / min<.>` over orders `|a|+|b| <= 2`.
    pub max_ratio_phi: f64,
    /// `max |d^a d^b (m/phi^2)| / min<.>^2`.
    pub max_ratio_phi_sq: f64,
    pub grid_points: usize,
}

/// Central finite differences in the `(xi, eta)` coordinates of
/// `g(xi, eta) = (m/phi_jk)(xi - eta, eta)` up to total order 2. The step is
/// `1e-4 <coordinate>`, Richardson-checked against `h/2`.
pub fn symbol_derivative_scan(
    eps: f64,
    kappa0: f64,
    j: usize,
    k: usize,
    n: usize,
) -> Result<DerivativeScanReport, PhaseError> {
    let fam = PhaseFamily::new(Variant::Electron, eps, kappa0, j, k);
    let sym = NormalFormSymbol::new(fam);
    let rmax = 4.0 * (kappa0 / eps).sqrt();
    let bracket = |v: &[f64; 3]| (1.0 + v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();

    let scan = |halve_step: bool| -> (f64, f64) {
        let points: Vec<(f64, f64, f64)> = {
            let mut p = Vec::new();
            for ir in 0..n {
                for ie in 0..n {
                    for ic in 0..n {
                        let rx = rmax * (ir as f64 + 0.5) / n as f64;
                        let re = rmax * (ie as f64 + 0.5) / n as f64;
                        let ct = -1.0 + 2.0 * (ic as f64 + 0.5) / n as f64;
                        p.push((rx, re, ct));
                    }
                }
            }
            p
        };
        let ratios: Vec<(f64, f64)> = points
            .par_iter()
            .map(|&(rx, re, ct)| {
                // xi - eta = zeta-argument; parametrize the *evaluated* pair
                let (zeta, eta) = vectors(rx, re, ct);
                let xi = [zeta[0] + eta[0], zeta[1] + eta[1], 0.0];
                let g_phi =
                    |x: &[f64; 3], e: &[f64; 3]| sym.m_over_phi(&[x[0] - e[0], x[1] - e[1], x[2] - e[2]], e);
                let g_phi2 = |x: &[f64; 3], e: &[f64; 3]| {
                    sym.m_over_phi_sq(&[x[0] - e[0], x[1] - e[1], x[2] - e[2]], e)
                };
                let denom = bracket(&xi)
                    .min(bracket(&eta))
                    .min(bracket(&zeta));
                let scale = if halve_step { 0.5e-4 } else { 1e-4 };
                let max_d_phi = max_derivative(&g_phi, &xi, &eta, scale);
                let max_d_phi2 = max_derivative(&g_phi2, &xi, &eta, scale);
                (max_d_phi / denom, max_d_phi2 / (denom * denom))
            })
            .collect();
        (
            ratios.iter().map(|r| r.0).fold(0.0, f64::max),
            ratios.iter().map(|r| r.1).fold(0.0, f64::max),
        )
    };

    let (r_phi, r_phi2) = scan(false);
    let (r_phi_h, r_phi2_h) = scan(true);
    for (a, b) in [(r_phi, r_phi_h), (r_phi2, r_phi2_h)] {
        let mismatch = (a / b).max(b / a);
        if !mismatch.is_finite() || mismatch > 1.5 {
            return Err(PhaseError::StepNotConverged { mismatch });
        }
    }
    Ok(DerivativeScanReport {
        eps,
        kappa0,
        j,
        k,
        max_ratio_phi: r_phi.max(r_phi_h),
        max_ratio_phi_sq: r_phi2.max(r_phi2_h),
        grid_points: n * n * n,
    })
}

/// Max modulus over all derivatives of total order <= 2 in the six
/// coordinates of `(xi, eta)`, central stencils with per-coordinate step
/// `scale * <coordinate vector>`.
fn max_derivative<G>(g: &G, xi: &[f64; 3], eta: &[f64; 3], scale: f64) -> f64
where
    G: Fn(&[f64; 3], &[f64; 3]) -> crate::Complex,
{
    let bracket = |v: &[f64; 3]| (1.0 + v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let hx = scale * bracket(xi);
    let he = scale * bracket(eta);
    let eval = |dx: [f64; 3], de: [f64; 3]| {
        g(
            &[xi[0] + dx[0], xi[1] + dx[1], xi[2] + dx[2]],
            &[eta[0] + de[0], eta[1] + de[1], eta[2] + de[2]],
        )
    };
    let zero = [0.0; 3];
    let unit = |a: usize, h: f64| {
        let mut v = [0.0; 3];
        v[a] = h;
        v
    };
    let center = eval(zero, zero);
    let mut worst = center.norm(); // order zero
    // first and pure second derivatives, 6 coordinates
    for coord in 0..6 {
        let (dx, de, h) = if coord < 3 {
            (unit(coord, hx), zero, hx)
        } else {
            (zero, unit(coord - 3, he), he)
        };
        let neg = |v: [f64; 3]| [-v[0], -v[1], -v[2]];
        let p = eval(dx, de);
        let m = eval(neg(dx), neg(de));
        worst = worst.max(((p - m) / (2.0 * h)).norm());
        worst = worst.max(((p - center * 2.0 + m) / (h * h)).norm());
    }
    // mixed second derivatives
    for a in 0..6 {
        for b in (a + 1)..6 {
            let step = |c: usize, sign: f64| -> ([f64; 3], [f64; 3], f64) {
                if c < 3 {
                    (unit(c, sign * hx), zero, hx)
                } else {
                    (zero, unit(c - 3, sign * he), he)
                }
            };
            let (dxa_p, dea_p, ha) = step(a, 1.0);
            let (dxa_m, dea_m, _) = step(a, -1.0);
            let (dxb_p, deb_p, hb) = step(b, 1.0);
            let (dxb_m, deb_m, _) = step(b, -1.0);
            let add = |u: [f64; 3], v: [f64; 3]| [u[0] + v[0], u[1] + v[1], u[2] + v[2]];
            let pp = eval(add(dxa_p, dxb_p), add(dea_p, deb_p));
            let pm = eval(add(dxa_p, dxb_m), add(dea_p, deb_m));
            let mp = eval(add(dxa_m, dxb_p), add(dea_m, deb_p));
            let mm = eval(add(dxa_m, dxb_m), add(dea_m, deb_m));
            worst = worst.max(((pp - pm - mp + mm) / (4.0 * ha * hb)).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_bounds_hold_at_kappa0_200th() {
        for eps in [1e-3, 1e-1, 1.0] {
            let report = phase_bound_scan(eps, 1.0 / 200.0, 40);
            assert!(report.pass, "eps={eps}: {report:?}");
            assert!(report.min_phi11 > 0.0);
            assert!(report.min_a >= 0.9992);
        }
    }

    #[test]
    fn reciprocal_ratio_near_origin_is_one() {
        // at xi = eta = 0 the ratio (1/phi_11)/min b = 1; scans over tiny
        // boxes around the origin approach it
        let report = phase_bound_scan(1e-6, 1.0 / 200.0, 24);
        assert!(report.reciprocal_ratio >= 0.99, "{}", report.reciprocal_ratio);
    }

    #[test]
    fn collinear_ratio_matches_asymptotics() {
        // eps -> 0, xi = eta collinear, large r: 1/phi_11 ~ 4r/3, min b ~ r
        // pushes the ratio toward 4/3
        let fam = PhaseFamily::new(Variant::Electron, 1e-9, 1.0 / 200.0, 1, 1);
        let r = 3.0e3;
        let xi = [r, 0.0, 0.0];
        let phi = fam.value(&xi, &xi);
        let bmin = fam.disp.b_value(r).unwrap();
        let ratio = 1.0 / (phi * bmin);
        assert!((ratio - 4.0 / 3.0).abs() < 0.01, "ratio {ratio}");
    }

    #[test]
    fn refinement_stability() {
        let (ratios, stable) = reciprocal_phase_refinement(1e-2, 1.0 / 200.0, &[24, 36, 54]);
        assert!(stable, "ratios {ratios:?}");
    }

    #[test]
    fn derivative_scan_bounded() {
        let report = symbol_derivative_scan(1e-2, 1.0 / 200.0, 1, 1, 10).unwrap();
        assert!(report.max_ratio_phi.is_finite() && report.max_ratio_phi > 0.0);
        assert!(report.max_ratio_phi_sq.is_finite());
        // zeroth order at the origin contributes 0.5 <= 1; the scan max stays
        // a modest multiple of the min-bracket weight
        assert!(report.max_ratio_phi < 50.0, "{}", report.max_ratio_phi);
        assert!(report.max_ratio_phi_sq < 50.0, "{}", report.max_ratio_phi_sq);
    }
}
