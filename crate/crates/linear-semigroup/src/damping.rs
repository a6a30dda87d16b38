//! High-frequency damping and heat-smoothing sweeps.

use crate::dispersion::DispersionSymbol;
use crate::green::green_matrix;
use spectral_core::cutoff::chi;

/// Asserted uniform damping rate: `c0 = kappa0 / 4`, a conservative floor
/// under the per-case rates of the closed-form analysis.
pub fn damping_rate(kappa0: f64) -> f64 {
    kappa0 / 4.0
}

#[derive(Debug, Clone)]
pub struct DampingReport {
    pub kappa0: f64,
    pub c0: f64,
    /// sup over the sweep of `|(1 - chi) G_j| e^{c0 t}`.
    pub max_ratio: f64,
    pub worst_eps: f64,
    pub worst_t: f64,
    pub worst_r: f64,
    pub worst_entry: usize,
    pub samples: usize,
}

/// Scan `sup |(1 - chi_{eps,kappa0}) G_j(t, xi)| e^{c0 t}` over the grids.
/// The sweep must straddle both the oscillatory and overdamped regimes; the
/// radial grid is derived from each eps so it always covers the crossing.
pub fn verify_high_freq_damping(
    variant: crate::dispersion::Variant,
    eps_grid: &[f64],
    t_grid: &[f64],
    radii_per_eps: usize,
    kappa0: f64,
) -> DampingReport {
    let c0 = damping_rate(kappa0);
    let mut report = DampingReport {
        kappa0,
        c0,
        max_ratio: 0.0,
        worst_eps: f64::NAN,
        worst_t: f64::NAN,
        worst_r: f64::NAN,
        worst_entry: 0,
        samples: 0,
    };
    for &eps in eps_grid {
        let disp = DispersionSymbol::new(variant, eps);
        let scaling = (eps / kappa0).sqrt();
        let r_lo = 0.8 * (kappa0 / eps).sqrt(); // just below the chi plateau edge
        let r_hi = 2.5 * disp.crossing_radius(); // deep into the overdamped regime
        for i in 0..radii_per_eps {
            let f = i as f64 / (radii_per_eps - 1) as f64;
            let r = r_lo * (r_hi / r_lo).powf(f);
            let mask = 1.0 - chi(scaling * r);
            if mask == 0.0 {
                continue;
            }
            for &t in t_grid {
                let g = green_matrix(t, r, &disp);
                let boost = (c0 * t).exp();
                for (entry, val) in [g.g1, g.g2, g.g3].into_iter().enumerate() {
                    let ratio = mask * val.abs() * boost;
                    report.samples += 1;
                    if ratio > report.max_ratio {
                        report.max_ratio = ratio;
                        report.worst_eps = eps;
                        report.worst_t = t;
                        report.worst_r = r;
                        report.worst_entry = entry + 1;
                    }
                }
            }
        }
    }
    report
}

#[derive(Debug, Clone)]
pub struct HeatSmoothingReport {
    /// `sup (1+t)^k |e^{-eps t r^2} (eps r^2)^k chi_{eps,kappa0}(r)|` per `k`.
    pub bounds: Vec<(usize, f64)>,
}

/// Heat-smoothing sweep for `k in ks`: the cutoff caps `eps r^2`, so the
/// weighted sup stays O(1) uniformly in `eps` and `t`.
pub fn heat_smoothing_scan(eps_grid: &[f64], t_grid: &[f64], kappa0: f64, ks: &[usize]) -> HeatSmoothingReport {
    let mut bounds = Vec::new();
    for &k in ks {
        let mut sup = 0.0f64;
        for &eps in eps_grid {
            let scaling = (eps / kappa0).sqrt();
            let rmax = 2.0 * (kappa0 / eps).sqrt();
            for i in 0..400 {
                let r = rmax * (i as f64 + 0.5) / 400.0;
                let y = eps * r * r;
                let cut = chi(scaling * r);
                for &t in t_grid {
                    let val = (-y * t).exp() * y.powi(k as i32) * cut * (1.0 + t).powi(k as i32);
                    sup = sup.max(val);
                }
            }
        }
        bounds.push((k, sup));
    }
    HeatSmoothingReport { bounds }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::Variant;

    fn t_grid() -> Vec<f64> {
        let mut t: Vec<f64> = (0..=100).map(|i| 2.0 * i as f64).collect();
        t.extend((1..20).map(|i| 0.1 * i as f64));
        t
    }

    #[test]
    fn chi_plateau_region_contributes_nothing() {
        // eps r^2 <= kappa0 has chi = 1, so the mask vanishes identically
        let kappa0 = 1.0 / 200.0;
        let eps = 0.1f64;
        let scaling = (eps / kappa0).sqrt();
        let r = 0.9 * (kappa0 / eps).sqrt();
        assert_eq!(1.0 - chi(scaling * r), 0.0);
    }

    #[test]
    fn damping_sweep_stays_below_three() {
        let report = verify_high_freq_damping(
            Variant::Electron,
            &[1e-3, 1e-2, 1e-1, 1.0],
            &t_grid(),
            160,
            1.0 / 200.0,
        );
        assert!(report.max_ratio <= 3.0, "C_report = {}", report.max_ratio);
        assert!(report.max_ratio > 0.5, "sweep shouldn't be trivially empty");
    }

    #[test]
    fn case1_point_example() {
        // eps = 1, |xi| = 1, t = 10: |G1| e^{kappa0 t/4} <= 1.1 e^{-t(1 - kappa0/4)} * e^... stays tiny
        let disp = DispersionSymbol::new(Variant::Electron, 1.0);
        let g = green_matrix(10.0, 1.0, &disp);
        let kappa0: f64 = 1.0 / 200.0;
        let v = g.g1.abs() * (kappa0 * 10.0 / 4.0_f64).exp();
        assert!(v <= 1.1, "boosted case-1 point {v}");
    }

    #[test]
    fn overdamped_point_decay_rate() {
        // eps = 1, |xi| = 3: slow eigenvalue <= -1/(2 eps); decay at least e^{-t/4}
        let disp = DispersionSymbol::new(Variant::Electron, 1.0);
        let (_, lm) = disp.eigenvalues(3.0);
        assert!(lm.re <= -0.5);
        for t in [1.0, 5.0, 20.0] {
            let g = green_matrix(t, 3.0, &disp);
            assert!(g.max_abs() <= (-t / 4.0).exp() * 3.0, "t={t}");
        }
    }

    #[test]
    fn heat_smoothing_bounded() {
        let t: Vec<f64> = (0..=60).map(|i| 0.5 * i as f64 * i as f64).collect();
        let report = heat_smoothing_scan(&[1e-3, 1e-2, 1e-1, 1.0], &t, 1.0 / 200.0, &[1, 2]);
        for (k, bound) in &report.bounds {
            assert!(bound.is_finite() && *bound <= 2.0, "k={k}: {bound}");
        }
    }
}
