//! Leray projection and Riesz transforms. Singular symbols send the zero mode
//! to zero; the Leray split assigns the zero mode wholly to the
//! divergence-free part.

use crate::field::{SpectralField, VectorField};
use crate::Complex;

/// Split `u = Pu + Pperp(u)` with `Pperp = grad laplace^{-1} div` acting as
/// `(xi xi^T / |xi|^2)` on coefficients. Returns `(Pu, Pperp u)`.
pub fn leray_project(u: &VectorField) -> (VectorField, VectorField) {
    let grid = u.grid().clone();
    let d = grid.dim();
    let mut pu = u.clone();
    let mut pperp = VectorField::zeros(&grid);
    for i in 0..grid.len() {
        let xi = grid.xi_at(i);
        let r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if r2 == 0.0 {
            continue; // zero mode stays in Pu
        }
        let mut dot = Complex::ZERO;
        for a in 0..d {
            dot += Complex::new(xi[a], 0.0) * u.component(a).coeffs()[i];
        }
        for a in 0..d {
            let proj = dot * Complex::new(xi[a] / r2, 0.0);
            pperp.component_mut(a).coeffs_mut()[i] = proj;
            pu.component_mut(a).coeffs_mut()[i] -= proj;
        }
    }
    (pu, pperp)
}

/// Vector Riesz transform `R f = (i xi / |xi|) f^`, zero mode mapped to zero.
pub fn riesz(f: &SpectralField) -> VectorField {
    let grid = f.grid().clone();
    let d = grid.dim();
    let mut out = VectorField::zeros(&grid);
    for i in 0..grid.len() {
        let xi = grid.xi_at(i);
        let r = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
        if r == 0.0 {
            continue;
        }
        let c = f.coeffs()[i];
        for a in 0..d {
            out.component_mut(a).coeffs_mut()[i] = Complex::new(0.0, xi[a] / r) * c;
        }
    }
    out
}

/// Adjoint `R* v = -div v / |xi|`, zero mode mapped to zero.
pub fn riesz_adjoint(v: &VectorField) -> SpectralField {
    let grid = v.grid().clone();
    let d = grid.dim();
    let mut out = SpectralField::zeros(&grid);
    for i in 0..grid.len() {
        let xi = grid.xi_at(i);
        let r = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
        if r == 0.0 {
            continue;
        }
        let mut div = Complex::ZERO;
        for a in 0..d {
            div += Complex::new(0.0, xi[a]) * v.component(a).coeffs()[i];
        }
        out.coeffs_mut()[i] = -div / Complex::new(r, 0.0);
    }
    out
}

/// Spectral curl size: in 2d the scalar `d1 u2 - d2 u1`, in 3d the full curl
/// vector; returned as the relative L2 size `||curl u|| / max(||u||, tiny)`.
pub fn curl_rel_l2(u: &VectorField) -> f64 {
    let grid = u.grid().clone();
    let d = grid.dim();
    let unorm: f64 = u
        .components()
        .iter()
        .map(|c| c.coeff_l2().powi(2))
        .sum::<f64>()
        .sqrt();
    if d == 1 {
        return 0.0;
    }
    let mut acc = 0.0f64;
    for i in 0..grid.len() {
        let xi = grid.xi_at(i);
        if d == 2 {
            let w = Complex::new(0.0, xi[0]) * u.component(1).coeffs()[i]
                - Complex::new(0.0, xi[1]) * u.component(0).coeffs()[i];
            acc += w.norm_sqr();
        } else {
            let c0 = Complex::new(0.0, xi[1]) * u.component(2).coeffs()[i]
                - Complex::new(0.0, xi[2]) * u.component(1).coeffs()[i];
            let c1 = Complex::new(0.0, xi[2]) * u.component(0).coeffs()[i]
                - Complex::new(0.0, xi[0]) * u.component(2).coeffs()[i];
            let c2 = Complex::new(0.0, xi[0]) * u.component(1).coeffs()[i]
                - Complex::new(0.0, xi[1]) * u.component(0).coeffs()[i];
            acc += c0.norm_sqr() + c1.norm_sqr() + c2.norm_sqr();
        }
    }
    acc.sqrt() / unorm.max(f64::MIN_POSITIVE)
}
