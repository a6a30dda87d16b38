//! Direct-sum bilinear operator
//! `T_s(f, g)^(xi) = sum_eta s(xi - eta, eta) f^(xi - eta) g^(eta)`.
//!
//! With the `f(x) = sum_k c_k e^{i xi_k x}` coefficient convention the lattice
//! measure is one, so `T_1(f, g) = f g` exactly. General symbols are not
//! convolutions, so the sum is evaluated directly and guarded by a cost budget.

use crate::error::PhaseError;
use crate::Complex;
use rayon::prelude::*;
use spectral_core::{Grid, SpectralField};

#[derive(Debug, Clone, Copy)]
pub struct BilinearBudget {
    pub max_pair_ops: usize,
}

impl Default for BilinearBudget {
    fn default() -> Self {
        // 32^2 grids in 2d and 16^3 grids in 3d stay well inside
        BilinearBudget {
            max_pair_ops: 100_000_000,
        }
    }
}

/// Apply `T_s` with a general symbol closure.
pub fn bilinear_apply<S>(
    symbol: S,
    f: &SpectralField,
    g: &SpectralField,
    budget: &BilinearBudget,
) -> Result<SpectralField, PhaseError>
where
    S: Fn(&[f64; 3], &[f64; 3]) -> Complex + Sync,
{
    f.check_same_grid(g)?;
    let grid = f.grid().clone();
    let nz_g: Vec<(usize, Complex)> = g
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm_sqr() > 0.0)
        .map(|(i, c)| (i, *c))
        .collect();
    let needed = grid.len() * nz_g.len();
    if needed > budget.max_pair_ops {
        return Err(PhaseError::CostGuard {
            needed,
            budget: budget.max_pair_ops,
        });
    }
    let out_coeffs: Result<Vec<Complex>, PhaseError> = (0..grid.len())
        .into_par_iter()
        .map(|out_idx| {
            if !grid.dealias_keep(out_idx) {
                return Ok(Complex::ZERO);
            }
            let k_out = grid.k_at(out_idx);
            let mut acc = Complex::ZERO;
            for &(eta_idx, g_c) in &nz_g {
                let k_eta = grid.k_at(eta_idx);
                let k_zeta = [
                    k_out[0] - k_eta[0],
                    k_out[1] - k_eta[1],
                    k_out[2] - k_eta[2],
                ];
                let Some(zeta_idx) = grid.index_of_k(&k_zeta) else {
                    continue;
                };
                let f_c = f.coeffs()[zeta_idx];
                if f_c.norm_sqr() == 0.0 {
                    continue;
                }
                let zeta = grid.xi_at(zeta_idx);
                let eta = grid.xi_at(eta_idx);
                let s = symbol(&zeta, &eta);
                if !s.re.is_finite() || !s.im.is_finite() {
                    return Err(PhaseError::NonFiniteSymbol { zeta, eta });
                }
                acc += s * f_c * g_c;
            }
            Ok(acc)
        })
        .collect();
    Ok(SpectralField::from_coeffs(&grid, out_coeffs?)?)
}

/// Pretabulated symbol for repeated applications on a fixed grid: the table
/// stores `s(xi - eta, eta)` for every (output mode, eta mode) pair.
pub struct BilinearTable {
    grid: Grid,
    table: Vec<Complex>,
}

impl BilinearTable {
    pub fn build<S>(grid: &Grid, symbol: S, budget: &BilinearBudget) -> Result<Self, PhaseError>
    where
        S: Fn(&[f64; 3], &[f64; 3]) -> Complex + Sync,
    {
        let n = grid.len();
        if n * n > budget.max_pair_ops {
            return Err(PhaseError::CostGuard {
                needed: n * n,
                budget: budget.max_pair_ops,
            });
        }
        let table: Result<Vec<Complex>, PhaseError> = (0..n * n)
            .into_par_iter()
            .map(|flat| {
                let out_idx = flat / n;
                let eta_idx = flat % n;
                if !grid.dealias_keep(out_idx) {
                    return Ok(Complex::ZERO);
                }
                let k_out = grid.k_at(out_idx);
                let k_eta = grid.k_at(eta_idx);
                let k_zeta = [
                    k_out[0] - k_eta[0],
                    k_out[1] - k_eta[1],
                    k_out[2] - k_eta[2],
                ];
                let Some(zeta_idx) = grid.index_of_k(&k_zeta) else {
                    return Ok(Complex::ZERO);
                };
                let zeta = grid.xi_at(zeta_idx);
                let eta = grid.xi_at(eta_idx);
                let s = symbol(&zeta, &eta);
                if !s.re.is_finite() || !s.im.is_finite() {
                    return Err(PhaseError::NonFiniteSymbol { zeta, eta });
                }
                Ok(s)
            })
            .collect();
        Ok(BilinearTable {
            grid: grid.clone(),
            table: table?,
        })
    }

    pub fn apply(&self, f: &SpectralField, g: &SpectralField) -> SpectralField {
        let grid = &self.grid;
        let n = grid.len();
        let coeffs: Vec<Complex> = (0..n)
            .into_par_iter()
            .map(|out_idx| {
                let k_out = grid.k_at(out_idx);
                let row = &self.table[out_idx * n..(out_idx + 1) * n];
                let mut acc = Complex::ZERO;
                for (eta_idx, &s) in row.iter().enumerate() {
                    if s == Complex::ZERO {
                        continue;
                    }
                    let g_c = g.coeffs()[eta_idx];
                    if g_c.norm_sqr() == 0.0 {
                        continue;
                    }
                    let k_eta = grid.k_at(eta_idx);
                    let k_zeta = [
                        k_out[0] - k_eta[0],
                        k_out[1] - k_eta[1],
                        k_out[2] - k_eta[2],
                    ];
                    let Some(zeta_idx) = grid.index_of_k(&k_zeta) else {
                        continue;
                    };
                    acc += s * f.coeffs()[zeta_idx] * g_c;
                }
                acc
            })
            .collect();
        SpectralField::from_coeffs(grid, coeffs).expect("table grid matches")
    }
}

/// Triple lattice sum `sum s(zeta, eta) f^(zeta) g^(eta) conj(h^(zeta+eta)) V`
/// for the adjoint-consistency check, `V` the box volume.
pub fn triple_pairing<S>(
    symbol: S,
    f: &SpectralField,
    g: &SpectralField,
    h: &SpectralField,
) -> Complex
where
    S: Fn(&[f64; 3], &[f64; 3]) -> Complex,
{
    let grid = f.grid();
    let mut acc = Complex::ZERO;
    for (zeta_idx, f_c) in f.coeffs().iter().enumerate() {
        if f_c.norm_sqr() == 0.0 {
            continue;
        }
        for (eta_idx, g_c) in g.coeffs().iter().enumerate() {
            if g_c.norm_sqr() == 0.0 {
                continue;
            }
            let kz = grid.k_at(zeta_idx);
            let ke = grid.k_at(eta_idx);
            let k_out = [kz[0] + ke[0], kz[1] + ke[1], kz[2] + ke[2]];
            let Some(out_idx) = grid.index_of_k(&k_out) else {
                continue;
            };
            if !grid.dealias_keep(out_idx) {
                continue;
            }
            let s = symbol(&grid.xi_at(zeta_idx), &grid.xi_at(eta_idx));
            acc += s * f_c * g_c * h.coeffs()[out_idx].conj();
        }
    }
    acc * grid.volume()
}

/// `<a, b>_{L^2} = V sum a^ conj(b^)`.
pub fn l2_inner(a: &SpectralField, b: &SpectralField) -> Complex {
    let mut acc = Complex::ZERO;
    for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
        acc += x * y.conj();
    }
    acc * a.grid().volume()
}

#[cfg(test)]
mod tests {
    use super::*;
    use spectral_core::fft::{forward_transform, inverse_transform};
    use spectral_core::synth::random_real_field;

    fn test_grid() -> Grid {
        Grid::new(2, 16, 2.0 * std::f64::consts::PI, 2.0 / 3.0).unwrap()
    }

    #[test]
    fn unit_symbol_is_pointwise_product() {
        let grid = test_grid();
        let f = random_real_field(&grid, 1, 4.0, 0.7).dealiased();
        let g = random_real_field(&grid, 2, 4.0, 0.7).dealiased();
        let t = bilinear_apply(|_, _| Complex::new(1.0, 0.0), &f, &g, &BilinearBudget::default())
            .unwrap();
        // pseudo-spectral product, dealiased
        let pf = inverse_transform(&f);
        let pg = inverse_transform(&g);
        let prod: Vec<Complex> = pf.iter().zip(&pg).map(|(a, b)| a * b).collect();
        let mut expect = forward_transform(&grid, &prod).unwrap();
        expect.dealias();
        let defect = t.diff_with(&expect).coeff_l2();
        assert!(defect < 1e-12, "T_1(f,g) vs f*g defect {defect}");
    }

    #[test]
    fn separable_symbol_factorizes() {
        let grid = test_grid();
        let f = random_real_field(&grid, 3, 4.0, 0.5).dealiased();
        let g = random_real_field(&grid, 4, 4.0, 0.5).dealiased();
        let a = |zeta: &[f64; 3]| Complex::new((-0.3 * (zeta[0] * zeta[0] + zeta[1] * zeta[1])).exp(), 0.0);
        let c = |eta: &[f64; 3]| Complex::new(1.0 / (1.0 + eta[0] * eta[0] + eta[1] * eta[1]), 0.0);
        let t = bilinear_apply(|z, e| a(z) * c(e), &f, &g, &BilinearBudget::default()).unwrap();
        let fa = f.apply_multiplier(|z| a(z)).unwrap();
        let gc = g.apply_multiplier(|e| c(e)).unwrap();
        let pf = inverse_transform(&fa);
        let pg = inverse_transform(&gc);
        let prod: Vec<Complex> = pf.iter().zip(&pg).map(|(x, y)| x * y).collect();
        let mut expect = forward_transform(&grid, &prod).unwrap();
        expect.dealias();
        let defect = t.diff_with(&expect).coeff_l2();
        assert!(defect < 1e-12, "separable defect {defect}");
    }

    #[test]
    fn symmetric_symbol_commutes() {
        let grid = test_grid();
        let f = random_real_field(&grid, 5, 4.0, 0.5).dealiased();
        let g = random_real_field(&grid, 6, 4.0, 0.5).dealiased();
        let s = |z: &[f64; 3], e: &[f64; 3]| {
            Complex::new(
                1.0 / (1.0 + z[0] * z[0] + e[0] * e[0] + (z[1] + e[1]).powi(2)),
                0.0,
            )
        };
        let a = bilinear_apply(s, &f, &g, &BilinearBudget::default()).unwrap();
        let b = bilinear_apply(s, &g, &f, &BilinearBudget::default()).unwrap();
        let defect = a.diff_with(&b).coeff_l2();
        assert!(defect < 1e-12 * a.coeff_l2().max(1.0));
    }

    #[test]
    fn adjoint_consistency() {
        let grid = test_grid();
        let f = random_real_field(&grid, 7, 4.0, 0.5).dealiased();
        let g = random_real_field(&grid, 8, 4.0, 0.5).dealiased();
        let h = random_real_field(&grid, 9, 4.0, 0.5).dealiased();
        let s = |z: &[f64; 3], e: &[f64; 3]| {
            Complex::new(0.3 + z[0] * e[1] * 0.01, 0.05 * (z[1] - e[0]))
        };
        let t = bilinear_apply(s, &f, &g, &BilinearBudget::default()).unwrap();
        let lhs = l2_inner(&t, &h);
        let rhs = triple_pairing(s, &f, &g, &h);
        assert!(
            (lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0),
            "pairing defect {}",
            (lhs - rhs).norm()
        );
    }

    #[test]
    fn cost_guard_refuses_large_grids() {
        let grid = Grid::new(3, 32, 1.0, 1.0).unwrap();
        let f = SpectralField::zeros(&grid);
        let g0 = {
            let mut g = SpectralField::zeros(&grid);
            for c in g.coeffs_mut().iter_mut() {
                *c = Complex::new(1.0, 0.0);
            }
            g
        };
        let r = bilinear_apply(|_, _| Complex::new(1.0, 0.0), &f, &g0, &BilinearBudget::default());
        assert!(matches!(r, Err(PhaseError::CostGuard { .. })));
    }

    #[test]
    fn table_matches_direct_apply() {
        let grid = test_grid();
        let f = random_real_field(&grid, 10, 4.0, 0.5).dealiased();
        let g = random_real_field(&grid, 11, 4.0, 0.5).dealiased();
        let s = |z: &[f64; 3], e: &[f64; 3]| Complex::new((z[0] - e[1]).cos(), (z[1] * e[0]).sin() * 0.2);
        let direct = bilinear_apply(s, &f, &g, &BilinearBudget::default()).unwrap();
        let table = BilinearTable::build(&grid, s, &BilinearBudget::default()).unwrap();
        let tabled = table.apply(&f, &g);
        let defect = direct.diff_with(&tabled).coeff_l2();
        assert!(defect < 1e-13);
    }
}
