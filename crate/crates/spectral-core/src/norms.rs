//! Quadrature-consistent norms: physical-space `L^p`, coefficient-space
//! Sobolev (`H^s`, homogeneous negative `H^-s`), `W^{s,p}` via Bessel
//! potentials, and Besov block sums.

use crate::error::SpectralError;
use crate::fft::inverse_transform;
use crate::field::{SpectralField, VectorField};
use crate::lp::littlewood_paley_block;
use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormKind {
    /// `L^p`, `p in [1, inf]` (`f64::INFINITY` for the sup norm).
    Lp(f64),
    /// Inhomogeneous Sobolev `H^s`.
    Hs(f64),
    /// Homogeneous negative Sobolev `H^{-s}` (argument is `s > 0`).
    HsDotNeg(f64),
    /// `W^{s,p}` via `<D>^s` then `L^p`.
    Wsp(f64, f64),
    /// Besov `B^s_{p,r}`.
    Besov(f64, f64, f64),
}

pub fn norm(f: &SpectralField, kind: NormKind) -> Result<f64, SpectralError> {
    match kind {
        NormKind::Lp(p) => lp_norm(f, p),
        NormKind::Hs(s) => Ok(hs_norm(f, s)),
        NormKind::HsDotNeg(s) => neg_sobolev_norm(f, s),
        NormKind::Wsp(s, p) => wsp_norm(f, s, p),
        NormKind::Besov(s, p, r) => besov_norm(f, s, p, r),
    }
}

/// `L^p` by collocation quadrature; `p = inf` is the max over samples.
pub fn lp_norm(f: &SpectralField, p: f64) -> Result<f64, SpectralError> {
    if p < 1.0 {
        return Err(SpectralError::BadParam {
            name: "p",
            reason: format!("L^p requires p >= 1, got {p}"),
        });
    }
    let samples = inverse_transform(f);
    if p.is_infinite() {
        return Ok(samples.iter().map(|c| c.norm()).fold(0.0, f64::max));
    }
    let w = f.grid().spacing().powi(f.grid().dim() as i32);
    let sum: f64 = samples.iter().map(|c| c.norm().powf(p)).sum();
    Ok((w * sum).powf(1.0 / p))
}

/// `H^s` by weighted coefficient sum, `sqrt(V sum <xi>^{2s} |c|^2)`.
pub fn hs_norm(f: &SpectralField, s: f64) -> f64 {
    let grid = f.grid();
    let mut acc = 0.0;
    for (i, c) in f.coeffs().iter().enumerate() {
        let w = (1.0 + grid.xi_norm_sq(i)).powf(s);
        acc += w * c.norm_sqr();
    }
    (grid.volume() * acc).sqrt()
}

/// Homogeneous `H^{-s}`; requires a vanishing zero mode.
pub fn neg_sobolev_norm(f: &SpectralField, s: f64) -> Result<f64, SpectralError> {
    if s <= 0.0 {
        return Err(SpectralError::BadParam {
            name: "s",
            reason: format!("negative-Sobolev order must be positive, got {s}"),
        });
    }
    f.require_mean_zero(crate::NEUTRALITY_TOL)?;
    let grid = f.grid();
    let mut acc = 0.0;
    for (i, c) in f.coeffs().iter().enumerate() {
        if i == 0 {
            continue;
        }
        let r2 = grid.xi_norm_sq(i);
        if r2 > 0.0 {
            acc += r2.powf(-s) * c.norm_sqr();
        }
    }
    Ok((grid.volume() * acc).sqrt())
}

/// Homogeneous `H^s` for `s >= 0` (zero mode contributes nothing).
pub fn homogeneous_hs_norm(f: &SpectralField, s: f64) -> f64 {
    let grid = f.grid();
    let mut acc = 0.0;
    for (i, c) in f.coeffs().iter().enumerate() {
        let r2 = grid.xi_norm_sq(i);
        if r2 > 0.0 {
            acc += r2.powf(s) * c.norm_sqr();
        } else if s == 0.0 && i == 0 {
            acc += c.norm_sqr();
        }
    }
    (grid.volume() * acc).sqrt()
}

/// `W^{s,p}` as `||<D>^s f||_{L^p}`.
pub fn wsp_norm(f: &SpectralField, s: f64, p: f64) -> Result<f64, SpectralError> {
    let bessel = f.apply_multiplier(|xi| {
        let r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        Complex::new((1.0 + r2).powf(s / 2.0), 0.0)
    })?;
    lp_norm(&bessel, p)
}

/// Besov `B^s_{p,r}` via Littlewood-Paley block sums up to the resolved band.
pub fn besov_norm(f: &SpectralField, s: f64, p: f64, r: f64) -> Result<f64, SpectralError> {
    if r < 1.0 {
        return Err(SpectralError::BadParam {
            name: "r",
            reason: format!("Besov summability requires r >= 1, got {r}"),
        });
    }
    let jmax = resolved_block_count(f);
    let mut acc = 0.0f64;
    let mut sup = 0.0f64;
    for j in 0..=jmax {
        let block = littlewood_paley_block(f, j);
        let bn = lp_norm(&block, p)?;
        let weighted = 2.0f64.powf(s * j as f64) * bn;
        if r.is_infinite() {
            sup = sup.max(weighted);
        } else {
            acc += weighted.powf(r);
        }
    }
    Ok(if r.is_infinite() { sup } else { acc.powf(1.0 / r) })
}

/// Number of dyadic blocks needed to cover the resolved band.
pub fn resolved_block_count(f: &SpectralField) -> usize {
    let ximax = f.grid().max_dealiased_freq().max(1.0);
    // block j covers |xi| up to 2^{j+1}
    (ximax.log2().ceil() as usize) + 1
}

/// Sum of squared norms over the components of a vector field.
pub fn vector_hs_norm(u: &VectorField, s: f64) -> f64 {
    u.components()
        .iter()
        .map(|c| hs_norm(c, s).powi(2))
        .sum::<f64>()
        .sqrt()
}

pub fn vector_lp_norm(u: &VectorField, p: f64) -> Result<f64, SpectralError> {
    // pointwise Euclidean modulus, then L^p
    let samples: Vec<Vec<Complex>> = u.components().iter().map(inverse_transform).collect();
    let grid = u.grid();
    let moduli: Vec<f64> = (0..grid.len())
        .map(|i| samples.iter().map(|s| s[i].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    if p.is_infinite() {
        return Ok(moduli.iter().copied().fold(0.0, f64::max));
    }
    if p < 1.0 {
        return Err(SpectralError::BadParam {
            name: "p",
            reason: format!("L^p requires p >= 1, got {p}"),
        });
    }
    let w = grid.spacing().powi(grid.dim() as i32);
    Ok((w * moduli.iter().map(|m| m.powf(p)).sum::<f64>()).powf(1.0 / p))
}
