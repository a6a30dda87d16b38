//! Closed-form Hessian determinant of the stationary phase
//! `Phi = b(xi) + (x/t).xi` on the low-frequency support (electron branch).

/// `det(grad^2 Phi)` at radius `r`:
/// `((1 - 2 e^2 r^2)/b)^d * (1 - 6 e^2 r^2 - 3 e^2 r^4 + 2 e^4 r^6) / (b^2 (1 - 2 e^2 r^2))`.
pub fn hessian_det(d: usize, eps: f64, r: f64) -> f64 {
    let e2 = eps * eps;
    let r2 = r * r;
    let b2 = 1.0 + r2 - e2 * r2 * r2;
    let b = b2.sqrt();
    let lead = 1.0 - 2.0 * e2 * r2;
    let num = 1.0 - 6.0 * e2 * r2 - 3.0 * e2 * r2 * r2 + 2.0 * e2 * e2 * r2 * r2 * r2;
    (lead / b).powi(d as i32) * num / (b2 * lead)
}

/// Paper-side lower bound `1 / (2^{d+1} 5^{(d+1)/2})`.
pub fn hessian_lower_bound(d: usize) -> f64 {
    1.0 / (2.0f64.powi(d as i32 + 1) * 5.0f64.powf((d as f64 + 1.0) / 2.0))
}

#[derive(Debug, Clone)]
pub struct HessianScanReport {
    pub d: usize,
    pub kappa0: f64,
    pub min_det: f64,
    pub worst_eps: f64,
    pub worst_r: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Minimum of the determinant over `{|xi| <= 2, eps |xi|^2 <= 2 kappa0}`
/// for every eps in the grid.
pub fn hessian_det_scan(d: usize, eps_grid: &[f64], kappa0: f64, points: usize) -> HessianScanReport {
    let mut report = HessianScanReport {
        d,
        kappa0,
        min_det: f64::INFINITY,
        worst_eps: f64::NAN,
        worst_r: f64::NAN,
        bound: hessian_lower_bound(d),
        pass: false,
    };
    for &eps in eps_grid {
        let rmax = (2.0f64).min((2.0 * kappa0 / eps).sqrt());
        for i in 0..=points {
            let r = rmax * i as f64 / points as f64;
            let v = hessian_det(d, eps, r);
            if v < report.min_det {
                report.min_det = v;
                report.worst_eps = eps;
                report.worst_r = r;
            }
        }
    }
    report.pass = report.min_det >= report.bound;
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_value_d3() {
        // 1/(2^4 * 5^2) = 1/400
        assert!((hessian_lower_bound(3) - 1.0 / 400.0).abs() < 1e-18);
    }

    #[test]
    fn inviscid_origin_is_one() {
        assert!((hessian_det(3, 1e-12, 0.0) - 1.0).abs() < 1e-10);
        assert!((hessian_det(2, 1e-12, 0.0) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn example_point_positive_above_bound() {
        // eps = 1, |xi|^2 = 2 kappa0 = 1/100
        let v = hessian_det(3, 1.0, (0.01f64).sqrt());
        assert!(v > 1.0 / 400.0, "{v}");
    }

    #[test]
    fn scan_passes_at_kappa0_1e3() {
        for d in [2usize, 3] {
            let report = hessian_det_scan(d, &[1e-3, 1e-2, 1e-1, 0.5, 1.0], 1e-3, 4000);
            assert!(report.pass, "d={d}: min {} < bound {}", report.min_det, report.bound);
        }
    }
}
