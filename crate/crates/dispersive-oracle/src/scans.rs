//! Sup-norm decay scans over time, with golden-section refinement of the
//! spatial maximum.

use crate::error::OracleError;
use crate::fit::DecayFit;
use crate::profile::RadialProfile;
use crate::propagator::{propagator_point, PropagatorOptions};
use linear_semigroup::{DispersionSymbol, Variant};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub quad: PropagatorOptions,
    /// Spatial samples per time entry.
    pub x_samples: usize,
    /// Fit window (must span at least half a decade).
    pub window: (f64, f64),
    pub d: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            quad: PropagatorOptions::default(),
            x_samples: 96,
            window: (10.0, 200.0),
            d: 3,
        }
    }
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

fn golden_refine<F>(f: &F, mut a: f64, mut b: f64, iters: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    let mut x1 = b - GOLDEN * (b - a);
    let mut x2 = a + GOLDEN * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLDEN * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - GOLDEN * (b - a);
            f1 = f(x1);
        }
    }
    f1.max(f2)
}

/// Approximate `sup_x |u(t, x)|` for each `t` and fit the decay exponent.
/// The spatial grid covers `[0, 1.2 vmax t + margin]` (the group-velocity
/// cone) with golden-section refinement around the largest sample.
pub fn sup_norm_scan(
    profile: &RadialProfile,
    disp: &DispersionSymbol,
    kappa0: f64,
    t_list: &[f64],
    opts: &ScanOptions,
) -> Result<DecayFit, OracleError> {
    if t_list.len() < 8 || !t_list.windows(2).all(|w| w[1] > w[0]) {
        return Err(OracleError::BadTimeList {
            need: 8,
            got: t_list.len(),
        });
    }
    let last = *t_list.last().unwrap();
    if last / t_list[0] < 10.0 {
        return Err(OracleError::BadTimeList {
            need: 8,
            got: t_list.len(),
        });
    }
    // max group speed over the cutoff support
    let support = 2.0 * (kappa0 / disp.epsilon).sqrt();
    let rmax = support.min(profile.tail_radius());
    let vmax = (1..200)
        .map(|i| {
            let r = rmax * i as f64 / 200.0;
            disp.b_prime(r).map(f64::abs).unwrap_or(0.0)
        })
        .fold(0.0f64, f64::max)
        .max(0.05);
    let values: Result<Vec<f64>, OracleError> = t_list
        .par_iter()
        .map(|&t| -> Result<f64, OracleError> {
            let xmax = 1.2 * vmax * t + 8.0;
            let eval = |x: f64| -> Result<f64, OracleError> {
                Ok(propagator_point(t, x, profile, disp, kappa0, opts.d, &opts.quad)?.norm())
            };
            let n = opts.x_samples;
            let mut best = (0usize, 0.0f64);
            let mut samples = Vec::with_capacity(n);
            for i in 0..n {
                let x = xmax * i as f64 / (n - 1) as f64;
                let v = eval(x)?;
                samples.push(v);
                if v > best.1 {
                    best = (i, v);
                }
            }
            let lo = if best.0 == 0 { 0.0 } else { xmax * (best.0 - 1) as f64 / (n - 1) as f64 };
            let hi = xmax * (best.0 + 1).min(n - 1) as f64 / (n - 1) as f64;
            let refined = golden_refine(
                &|x: f64| eval(x).unwrap_or(0.0),
                lo,
                hi.max(lo + 1e-6),
                24,
            );
            Ok(refined.max(best.1))
        })
        .collect();
    DecayFit::fit(t_list, &values?, opts.window)
}

/// Ion variant of the sup-norm scan (d = 3 only); the caller compares the
/// fitted exponent against 4/3.
pub fn ion_decay_scan(
    profile: &RadialProfile,
    epsilon: f64,
    kappa0: f64,
    t_list: &[f64],
    opts: &ScanOptions,
) -> Result<DecayFit, OracleError> {
    if opts.d != 3 {
        return Err(OracleError::BadDimension(opts.d));
    }
    let disp = DispersionSymbol::new(Variant::Ion, epsilon);
    sup_norm_scan(profile, &disp, kappa0, t_list, opts)
}

/// Log-spaced time grid helper.
pub fn geom_times(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}
