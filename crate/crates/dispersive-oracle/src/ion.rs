//! Pointwise analysis of the ion dispersion relation
//! `b(r) = sqrt(g(r))`, `g(r) = r^2 (2 + r^2)/(1 + r^2) - eps^2 r^4`,
//! with exact derivative formulas through third order.

use crate::error::OracleError;
use serde::Serialize;

/// `g` and its first three derivatives (exact rational forms).
pub fn g_parts(eps: f64, r: f64) -> (f64, f64, f64, f64) {
    let s = 1.0 + r * r;
    let e2 = eps * eps;
    let g = r * r + 1.0 - 1.0 / s - e2 * r.powi(4);
    let g1 = 2.0 * r + 2.0 * r / (s * s) - 4.0 * e2 * r.powi(3);
    let g2 = 2.0 + 2.0 / (s * s) - 8.0 * r * r / s.powi(3) - 12.0 * e2 * r * r;
    let g3 = -24.0 * r / s.powi(3) + 48.0 * r.powi(3) / s.powi(4) - 24.0 * e2 * r;
    (g, g1, g2, g3)
}

/// `(b, b', b'', b''')` where defined (`g > 0`).
pub fn b_derivs(eps: f64, r: f64) -> Option<(f64, f64, f64, f64)> {
    let (g, g1, g2, g3) = g_parts(eps, r);
    if g <= 0.0 {
        return None;
    }
    let b = g.sqrt();
    let b1 = g1 / (2.0 * b);
    let b2 = g2 / (2.0 * b) - g1 * g1 / (4.0 * g * b);
    let b3 = g3 / (2.0 * b) - 3.0 * g1 * g2 / (4.0 * g * b) + 3.0 * g1.powi(3) / (8.0 * g * g * b);
    Some((b, b1, b2, b3))
}

/// End of the oscillatory domain (`g(r) = 0`), or `cap` when `g > 0` there.
pub fn oscillatory_end(eps: f64, cap: f64) -> f64 {
    if g_parts(eps, cap).0 > 0.0 {
        return cap;
    }
    let mut lo = 1e-6;
    let mut hi = cap;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g_parts(eps, mid).0 > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[derive(Debug, Clone, Serialize)]
pub struct IonDispersionReport {
    pub eps: f64,
    pub kappa0: f64,
    /// Scan region end `sqrt(2 kappa0 / eps)` clipped to the oscillatory domain.
    pub region_end: f64,
    /// `min b'` over the scan region.
    pub min_b_prime: f64,
    /// Sign changes of `b''` located on the region (bisection to 1e-8).
    pub region_roots: Vec<f64>,
    /// Sign changes located on the absolute window `[1, 10]` clipped to the
    /// oscillatory domain (diagnostic; the decay analysis needs the inflection
    /// wherever the data support reaches it).
    pub window_roots: Vec<f64>,
    /// `(r0, b''' at r0, half-width iota, floor c2)` for the first window
    /// root, with `b''' >= c2 > 0` verified on `[r0 - iota, r0 + iota]`.
    pub inflection: Option<(f64, f64, f64, f64)>,
}

fn bisect_b2_root(eps: f64, mut lo: f64, mut hi: f64) -> f64 {
    let sign = |r: f64| b_derivs(eps, r).map(|d| d.2).unwrap_or(f64::NAN);
    let flo = sign(lo);
    for _ in 0..80 {
        if hi - lo < 1e-8 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = sign(mid);
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn scan_roots(eps: f64, lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    if hi <= lo {
        return roots;
    }
    let mut prev_r = lo;
    let mut prev = b_derivs(eps, prev_r).map(|d| d.2);
    for i in 1..=steps {
        let r = lo + (hi - lo) * i as f64 / steps as f64;
        let cur = b_derivs(eps, r).map(|d| d.2);
        if let (Some(a), Some(b)) = (prev, cur) {
            if a.signum() != b.signum() && a != 0.0 {
                roots.push(bisect_b2_root(eps, prev_r, r));
            }
        }
        prev_r = r;
        prev = cur;
    }
    roots
}

/// Full per-eps analysis. Errors (with the data attached in the message) when
/// the sign-change count on the scan region differs from one; the caller is
/// expected to surface that rather than ignore it.
pub fn ion_b_properties(eps: f64, kappa0: f64) -> Result<IonDispersionReport, OracleError> {
    let report = ion_b_report(eps, kappa0);
    if report.region_roots.len() != 1 {
        return Err(OracleError::IonInflectionCount {
            eps,
            lo: 0.0,
            hi: report.region_end,
            found: report.region_roots.len(),
        });
    }
    Ok(report)
}

/// The same analysis without the lemma-shaped arity check.
pub fn ion_b_report(eps: f64, kappa0: f64) -> IonDispersionReport {
    let osc = oscillatory_end(eps, 64.0);
    let region_end = ((2.0 * kappa0 / eps).sqrt()).min(0.999_999 * osc);
    let steps = 40_000;
    let mut min_b_prime = f64::INFINITY;
    for i in 1..=steps {
        let r = region_end * i as f64 / steps as f64;
        if let Some((_, b1, _, _)) = b_derivs(eps, r) {
            min_b_prime = min_b_prime.min(b1);
        }
    }
    // r -> 0 limit of b' is sqrt(2)
    min_b_prime = min_b_prime.min(2.0f64.sqrt());
    let region_roots = scan_roots(eps, 1e-4, region_end, steps);
    let window_hi = 10.0f64.min(0.999_999 * osc);
    let window_roots = scan_roots(eps, 1.0f64.min(window_hi), window_hi, steps);
    let inflection = window_roots.first().map(|&r0| {
        let b3_at = b_derivs(eps, r0).map(|d| d.3).unwrap_or(f64::NAN);
        // widen iota while b''' stays positive with a uniform floor
        let mut iota = 1e-3;
        let mut c2 = f64::INFINITY;
        while iota < 0.5 {
            let next = iota * 1.5;
            let mut floor = f64::INFINITY;
            let mut ok = true;
            for i in 0..=64 {
                let r = r0 - next + 2.0 * next * i as f64 / 64.0;
                match b_derivs(eps, r) {
                    Some((_, _, _, b3)) if b3 > 0.0 => floor = floor.min(b3),
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                break;
            }
            iota = next;
            c2 = floor;
        }
        (r0, b3_at, iota, c2)
    });
    IonDispersionReport {
        eps,
        kappa0,
        region_end,
        min_b_prime,
        region_roots,
        window_roots,
        inflection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_derivs_match_finite_differences() {
        let eps = 0.07;
        let h = 1e-5;
        for r in [0.3, 1.1, 2.7, 6.0] {
            let (_, g1, g2, g3) = g_parts(eps, r);
            let gp = (g_parts(eps, r + h).0 - g_parts(eps, r - h).0) / (2.0 * h);
            let gpp = (g_parts(eps, r + h).1 - g_parts(eps, r - h).1) / (2.0 * h);
            let gppp = (g_parts(eps, r + h).2 - g_parts(eps, r - h).2) / (2.0 * h);
            assert!((g1 - gp).abs() < 1e-8 * (1.0 + g1.abs()), "g1 at r={r}");
            assert!((g2 - gpp).abs() < 1e-8 * (1.0 + g2.abs()), "g2 at r={r}");
            assert!((g3 - gppp).abs() < 1e-7 * (1.0 + g3.abs()), "g3 at r={r}");
        }
    }

    #[test]
    fn min_b_prime_attains_paper_floor() {
        for eps in [1e-3, 1e-2, 1e-1, 1.0] {
            let report = ion_b_report(eps, 1.0 / 200.0);
            assert!(
                report.min_b_prime >= 1.0 / (2.0 * 2.0f64.sqrt()) - 1e-9,
                "eps={eps}: min b' = {}",
                report.min_b_prime
            );
        }
    }

    #[test]
    fn inviscid_inflection_location() {
        // eps -> 0: b = p, p'' root solves r^4 - 2 r^2 - 6 = 0 up to the
        // 1/(1+r^2) tail corrections; bisected value ~ 1.9095
        let report = ion_b_report(1e-6, 1.0 / 200.0);
        assert_eq!(report.window_roots.len(), 1);
        let r0 = report.window_roots[0];
        assert!((1.0..=10.0).contains(&r0));
        assert!((r0 - 1.909).abs() < 5e-3, "r0 = {r0}");
        let (_, b3, _, c2) = report.inflection.unwrap();
        assert!(b3 > 0.0 && c2 > 0.0);
    }

    #[test]
    fn small_eps_has_unique_region_root() {
        let report = ion_b_properties(1e-3, 1.0 / 200.0).unwrap();
        assert_eq!(report.region_roots.len(), 1);
        assert!((report.region_roots[0] - 1.9095).abs() < 1e-3);
        // r0 continuous in eps near 0
        let r_small = ion_b_report(1e-5, 1.0 / 200.0).window_roots[0];
        assert!((report.region_roots[0] - r_small).abs() < 1e-3);
    }

    #[test]
    fn larger_eps_flagged_not_silently_accepted() {
        // at eps = 1e-2 the cutoff region [0, 1] contains no inflection;
        // at eps = 1 the oscillatory domain ends near r = 1.19
        assert!(ion_b_properties(1e-2, 1.0 / 200.0).is_err());
        assert!(ion_b_properties(1.0, 1.0 / 200.0).is_err());
        let osc = oscillatory_end(1.0, 64.0);
        assert!((osc - 1.189).abs() < 5e-3, "oscillatory end {osc}");
    }
}
