use proptest::prelude::*;
use spectral_core::cutoff::{low_high_split, CutoffParams};
use spectral_core::fft::{forward_transform, inverse_transform};
use spectral_core::synth::random_real_field;
use spectral_core::{Complex, Grid, SpectralField};

#[test]
fn unit_symbol_is_identity() {
    let g = Grid::new(2, 16, 4.0, 1.0).unwrap();
    let f = random_real_field(&g, 1, 8.0, 1.0);
    let out = f.apply_multiplier(|_| Complex::new(1.0, 0.0)).unwrap();
    assert_eq!(out.coeffs(), f.coeffs());
}

#[test]
fn laplacian_on_plane_wave() {
    let g = Grid::new(2, 16, 2.0 * std::f64::consts::PI, 1.0).unwrap();
    let k = [3i64, -2, 0];
    let f = SpectralField::single_mode(&g, &k, Complex::new(1.0, 0.0)).unwrap();
    let lap = f
        .apply_multiplier(|xi| Complex::new(-(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]), 0.0))
        .unwrap();
    let idx = g.index_of_k(&k).unwrap();
    let expect = -(9.0 + 4.0);
    assert!((lap.coeffs()[idx] - Complex::new(expect, 0.0)).norm() < 1e-13);
}

#[test]
fn chi_multiplier_kills_outside_support() {
    // eps = 1, kappa0 = 1/200: chi supported in |xi| <= 2 sqrt(kappa0/eps)
    let g = Grid::new(1, 256, 2.0 * std::f64::consts::PI * 40.0, 1.0).unwrap();
    let params = CutoffParams::new(1.0, 1.0 / 200.0).unwrap();
    let f = random_real_field(&g, 3, 3.0, 1.0);
    let cut = f
        .apply_radial(|r| Complex::new(params.chi_at(r), 0.0))
        .unwrap();
    let cutoff_radius = params.support_radius();
    assert!((cutoff_radius - 2.0 / 200.0f64.sqrt()).abs() < 1e-15);
    for i in 0..g.len() {
        if g.xi_norm_sq(i).sqrt() >= cutoff_radius {
            assert_eq!(cut.coeffs()[i], Complex::ZERO);
        }
    }
}

#[test]
fn non_finite_symbol_rejected() {
    let g = Grid::new(1, 8, 1.0, 1.0).unwrap();
    let f = random_real_field(&g, 5, 20.0, 1.0);
    let res = f.apply_multiplier(|xi| {
        let r = (xi[0] * xi[0]).sqrt();
        Complex::new(1.0 / r, 0.0) // infinite at xi = 0
    });
    assert!(res.is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn multiplier_composition(seed in 0u64..5000) {
        let g = Grid::new(2, 8, 3.0, 1.0).unwrap();
        let f = random_real_field(&g, seed, 5.0, 1.0);
        let m1 = |xi: &[f64;3]| Complex::new((-(xi[0]*xi[0])).exp(), 0.0);
        let m2 = |xi: &[f64;3]| Complex::new(xi[1].cos(), xi[0].sin());
        let a = f.apply_multiplier(m1).unwrap().apply_multiplier(m2).unwrap();
        let b = f.apply_multiplier(|xi| m1(xi) * m2(xi)).unwrap();
        let defect = a.diff_with(&b).coeff_l2();
        prop_assert!(defect <= 1e-12 * f.coeff_l2().max(1.0));
    }

    #[test]
    fn real_symbol_preserves_hermitian_symmetry(seed in 0u64..5000) {
        let g = Grid::new(2, 8, 3.0, 1.0).unwrap();
        let f = random_real_field(&g, seed, 5.0, 1.0);
        // radial (hence even) real symbol
        let out = f.apply_radial(|r| Complex::new(1.0 / (1.0 + r * r), 0.0)).unwrap();
        prop_assert!(out.hermitian_defect() < 1e-13);
    }

    #[test]
    fn low_high_split_partition(seed in 0u64..5000, eps in 1e-3f64..1.0) {
        let g = Grid::new(1, 32, 10.0, 1.0).unwrap();
        let f = random_real_field(&g, seed, 12.0, 1.0);
        let params = CutoffParams::new(eps, CutoffParams::DEFAULT_KAPPA0).unwrap();
        let (lo, hi) = low_high_split(&f, &params);
        let sum = lo.sum_with(&hi);
        prop_assert_eq!(sum.coeffs(), f.coeffs());
    }

    #[test]
    fn transform_roundtrip(seed in 0u64..5000) {
        let g = Grid::new(2, 8, 2.0, 1.0).unwrap();
        let f = random_real_field(&g, seed, 9.0, 1.0);
        let phys = inverse_transform(&f);
        let back = forward_transform(&g, &phys).unwrap();
        let worst = back
            .coeffs()
            .iter()
            .zip(f.coeffs())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        prop_assert!(worst < 1e-12);
    }
}
