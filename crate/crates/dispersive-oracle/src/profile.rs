//! Radial data profiles `f^(r)` for the whole-space scans.

use crate::error::OracleError;

/// Smooth rapidly-decaying radial profile, either closed-form Gaussian or
/// sampled with natural cubic spline interpolation.
#[derive(Debug, Clone)]
pub enum RadialProfile {
    /// `exp(-r^2 / (2 w^2))`.
    Gaussian { width: f64 },
    /// Samples on an increasing abscissa grid; zero beyond the last knot.
    Sampled { rs: Vec<f64>, spline: Spline },
}

impl RadialProfile {
    pub fn gaussian(width: f64) -> Self {
        assert!(width > 0.0);
        RadialProfile::Gaussian { width }
    }

    pub fn from_samples(rs: Vec<f64>, vals: Vec<f64>) -> Result<Self, OracleError> {
        if rs.len() != vals.len() || rs.len() < 4 {
            return Err(OracleError::BadParam {
                name: "samples",
                reason: "need >= 4 matching (r, value) pairs".into(),
            });
        }
        if !rs.windows(2).all(|w| w[1] > w[0]) {
            return Err(OracleError::BadParam {
                name: "rs",
                reason: "abscissae must be strictly increasing".into(),
            });
        }
        let spline = Spline::natural(&rs, &vals);
        Ok(RadialProfile::Sampled { rs, spline })
    }

    pub fn eval(&self, r: f64) -> f64 {
        match self {
            RadialProfile::Gaussian { width } => (-r * r / (2.0 * width * width)).exp(),
            RadialProfile::Sampled { rs, spline } => {
                if r < rs[0] || r > *rs.last().unwrap() {
                    0.0
                } else {
                    spline.eval(r)
                }
            }
        }
    }

    /// Radius beyond which the profile is negligible for quadrature.
    pub fn tail_radius(&self) -> f64 {
        match self {
            RadialProfile::Gaussian { width } => 12.0 * width,
            RadialProfile::Sampled { rs, .. } => *rs.last().unwrap(),
        }
    }

    /// Truncation guard: where the quadrature range ends at the profile's own
    /// tail (rather than at the cutoff support, which vanishes exactly), the
    /// tail values must sit far below the peak so the discarded
    /// `(1+r)^{-10}`-envelope mass is negligible.
    pub fn check_tail(&self, rmax: f64) -> Result<(), OracleError> {
        let peak = (0..=256)
            .map(|i| self.eval(rmax * i as f64 / 256.0).abs())
            .fold(0.0f64, f64::max)
            .max(f64::MIN_POSITIVE);
        for i in 0..=16 {
            let r = rmax * (0.95 + 0.05 * i as f64 / 16.0);
            let v = self.eval(r).abs();
            let bound = 1e-6 * peak;
            if v > bound {
                return Err(OracleError::HeavyTail { r, value: v, bound });
            }
        }
        Ok(())
    }
}

/// Natural cubic spline on a fixed knot grid.
#[derive(Debug, Clone)]
pub struct Spline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    second: Vec<f64>,
}

impl Spline {
    pub fn natural(xs: &[f64], ys: &[f64]) -> Self {
        let n = xs.len();
        let mut second = vec![0.0; n];
        let mut u = vec![0.0; n];
        for i in 1..n - 1 {
            let sig = (xs[i] - xs[i - 1]) / (xs[i + 1] - xs[i - 1]);
            let p = sig * second[i - 1] + 2.0;
            second[i] = (sig - 1.0) / p;
            let d = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])
                - (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
            u[i] = (6.0 * d / (xs[i + 1] - xs[i - 1]) - sig * u[i - 1]) / p;
        }
        for i in (0..n - 1).rev() {
            second[i] = second[i] * second[i + 1] + u[i];
        }
        Spline {
            xs: xs.to_vec(),
            ys: ys.to_vec(),
            second,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let mut lo = 0;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (hi + lo) / 2;
            if self.xs[mid] > x {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let h = self.xs[hi] - self.xs[lo];
        let a = (self.xs[hi] - x) / h;
        let b = (x - self.xs[lo]) / h;
        a * self.ys[lo]
            + b * self.ys[hi]
            + ((a * a * a - a) * self.second[lo] + (b * b * b - b) * self.second[hi]) * h * h / 6.0
    }
}
