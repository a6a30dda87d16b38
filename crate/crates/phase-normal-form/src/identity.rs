//! Numerical check of the time integration-by-parts identity.
//!
//! In diagonalized variables `r_1, r_2` solving
//! `d/ds r_j = lambda_(j)(D) r_j + B_j(s)` (with `lambda_(1) = lambda_-`,
//! `lambda_(2) = lambda_+`), the low-frequency quadratic Duhamel term
//!
//! `G = int_0^t e^{-(a + i b)(t-s)} n1 chi T_m(r_j(s), r_k(s)) ds`,
//! `a = eps |xi|^2`,
//!
//! equals `I1 + ... + I7` with
//!
//! `I1 =  i chi n1 T_{m/phi}(r_j(t), r_k(t))`
//! `I2 = -i e^{-(a+ib)t} chi n1 T_{m/phi}(r_j(0), r_k(0))`
//! `I3 =  i int e^{-(a+ib)(t-s)} (eps Lap)_out chi n1 T_{m/phi}(r_j, r_k)`
//! `I4 = -i int e^{-(a+ib)(t-s)} chi n1 T_{m/phi}(eps Lap r_j, r_k)`
//! `I5 = -i int e^{-(a+ib)(t-s)} chi n1 T_{m/phi}(B_j, r_k)`
//! `I6 = -i int e^{-(a+ib)(t-s)} chi n1 T_{m/phi}(r_j, eps Lap r_k)`
//! `I7 = -i int e^{-(a+ib)(t-s)} chi n1 T_{m/phi}(r_j, B_k)`,
//!
//! and a second integration by parts expands `I4 = I41 + ... + I47` with the
//! doubly divided symbol `m/phi^2`, the first slot carrying `eps Lap r_j`
//! (source `eps Lap B_j`). Both sides are discretized with the composite
//! trapezoid rule on shared nodes, so the defect vanishes at second order.

use crate::bilinear::{BilinearBudget, BilinearTable};
use crate::error::PhaseError;
use crate::phase::{NormalFormSymbol, PhaseFamily};
use crate::Complex;
use linear_semigroup::{DispersionSymbol, Variant};
use spectral_core::cutoff::{chi, chi_tilde};
use spectral_core::{Grid, SpectralField};

/// Output-side multiplier choices (the `n1(D)` slot).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum N1Slot {
    /// `|xi|`
    Modulus,
    /// `eps Lap chi~ = -eps |xi|^2 chi~(xi)`
    EpsLapTilde,
    /// `i b(xi) chi~(xi)`
    IbTilde,
}

#[derive(Debug, Clone, Copy)]
pub struct IdentityConfig {
    pub epsilon: f64,
    pub kappa0: f64,
    pub j: usize,
    pub k: usize,
    pub n1: N1Slot,
    pub t_final: f64,
}

/// Trajectory data at one quadrature node: the diagonalized pair and its
/// sources, all low-frequency spectral fields on a shared grid.
#[derive(Debug, Clone)]
pub struct TrajectoryNode {
    pub s: f64,
    pub r1: SpectralField,
    pub r2: SpectralField,
    pub b1: SpectralField,
    pub b2: SpectralField,
}

/// Anything able to produce trajectory nodes at requested times.
pub trait TrajectorySource {
    fn node(&self, s: f64) -> TrajectoryNode;
}

/// Equispaced nodes from a source.
pub fn nodes_from_source<S: TrajectorySource>(src: &S, t_final: f64, n: usize) -> Vec<TrajectoryNode> {
    (0..=n)
        .map(|i| src.node(t_final * i as f64 / n as f64))
        .collect()
}

#[derive(Debug, Clone)]
pub struct IdentityResidual {
    pub lhs_norm: f64,
    /// `||G - sum I_l|| / ||G||` (first integration by parts).
    pub residual_first: f64,
    /// `||I4 - sum I_4l|| / ||I4||` (second integration by parts).
    pub residual_second: f64,
    pub nodes: usize,
}

struct ModeData {
    damp: Vec<f64>,    // a = eps |xi|^2
    osc: Vec<f64>,     // b(|xi|)
    out_mult: Vec<Complex>, // n1(xi) chi_{eps,kappa0}(xi)
    eps_lap: Vec<f64>, // -eps |xi|^2 (argument-side heat operator)
}

fn mode_data(grid: &Grid, cfg: &IdentityConfig) -> ModeData {
    let disp = DispersionSymbol::new(Variant::Electron, cfg.epsilon);
    let scaling = (cfg.epsilon / cfg.kappa0).sqrt();
    let mut damp = Vec::with_capacity(grid.len());
    let mut osc = Vec::with_capacity(grid.len());
    let mut out_mult = Vec::with_capacity(grid.len());
    let mut eps_lap = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let r = grid.xi_norm_sq(i).sqrt();
        let a = cfg.epsilon * r * r;
        let b = disp.radicand(r).max(0.0).sqrt();
        let n1 = match cfg.n1 {
            N1Slot::Modulus => Complex::new(r, 0.0),
            N1Slot::EpsLapTilde => Complex::new(-a * chi_tilde(scaling * r), 0.0),
            N1Slot::IbTilde => Complex::new(0.0, b * chi_tilde(scaling * r)),
        };
        damp.push(a);
        osc.push(b);
        out_mult.push(n1 * chi(scaling * r));
        eps_lap.push(-a);
    }
    ModeData {
        damp,
        osc,
        out_mult,
        eps_lap,
    }
}

fn apply_eps_lap(md: &ModeData, f: &SpectralField) -> SpectralField {
    let mut out = f.clone();
    for (c, &el) in out.coeffs_mut().iter_mut().zip(&md.eps_lap) {
        *c *= el;
    }
    out
}

/// `out += w * e^{-(a+ib)(t-s)} .* (out_mult .* field)` accumulated per mode.
fn accumulate_weighted(
    out: &mut SpectralField,
    md: &ModeData,
    field: &SpectralField,
    t_minus_s: f64,
    weight: Complex,
    with_out_mult: bool,
) {
    for (i, c) in out.coeffs_mut().iter_mut().enumerate() {
        let decay = (-md.damp[i] * t_minus_s).exp();
        let phase = Complex::from_polar(decay, -md.osc[i] * t_minus_s);
        let m = if with_out_mult {
            md.out_mult[i]
        } else {
            Complex::new(1.0, 0.0)
        };
        *c += weight * phase * m * field.coeffs()[i];
    }
}

/// Run the identity check on trajectory nodes (equispaced in `[0, t_final]`).
pub fn normal_form_identity_check(
    cfg: &IdentityConfig,
    nodes: &[TrajectoryNode],
) -> Result<IdentityResidual, PhaseError> {
    if nodes.len() < 3 {
        return Err(PhaseError::TooFewNodes {
            need: 3,
            got: nodes.len(),
        });
    }
    let grid = nodes[0].r1.grid().clone();
    let md = mode_data(&grid, cfg);
    let fam = PhaseFamily::new(Variant::Electron, cfg.epsilon, cfg.kappa0, cfg.j, cfg.k);
    let sym = NormalFormSymbol::new(fam);
    let budget = BilinearBudget::default();
    let t_m = BilinearTable::build(&grid, |z, e| sym.m(z, e), &budget)?;
    let t_m_phi = BilinearTable::build(&grid, |z, e| sym.m_over_phi(z, e), &budget)?;
    let t_m_phi2 = BilinearTable::build(&grid, |z, e| sym.m_over_phi_sq(z, e), &budget)?;

    let t = cfg.t_final;
    let n = nodes.len() - 1;
    let ds = t / n as f64;
    let i_unit = Complex::new(0.0, 1.0);

    let pick = |node: &TrajectoryNode| -> (SpectralField, SpectralField, SpectralField, SpectralField) {
        // (slot_j field, slot_k field, slot_j source, slot_k source)
        let (rj, bj) = if cfg.j == 1 {
            (node.r1.clone(), node.b1.clone())
        } else {
            (node.r2.clone(), node.b2.clone())
        };
        let (rk, bk) = if cfg.k == 1 {
            (node.r1.clone(), node.b1.clone())
        } else {
            (node.r2.clone(), node.b2.clone())
        };
        (rj, rk, bj, bk)
    };

    let mut lhs = SpectralField::zeros(&grid);
    let mut i3 = SpectralField::zeros(&grid);
    let mut i4 = SpectralField::zeros(&grid);
    let mut i5 = SpectralField::zeros(&grid);
    let mut i6 = SpectralField::zeros(&grid);
    let mut i7 = SpectralField::zeros(&grid);
    let mut i43 = SpectralField::zeros(&grid);
    let mut i44 = SpectralField::zeros(&grid);
    let mut i45 = SpectralField::zeros(&grid);
    let mut i46 = SpectralField::zeros(&grid);
    let mut i47 = SpectralField::zeros(&grid);

    for (idx, node) in nodes.iter().enumerate() {
        let w = if idx == 0 || idx == n { 0.5 * ds } else { ds };
        let w = Complex::new(w, 0.0);
        let t_minus_s = t - node.s;
        let (rj, rk, bj, bk) = pick(node);
        let lap_rj = apply_eps_lap(&md, &rj);
        let lap_rk = apply_eps_lap(&md, &rk);

        // first level integrands
        let g_m = t_m.apply(&rj, &rk);
        accumulate_weighted(&mut lhs, &md, &g_m, t_minus_s, w, true);
        let g_phi = t_m_phi.apply(&rj, &rk);
        // I3 carries the output-side eps Lap
        let mut g_phi_lap_out = g_phi.clone();
        for (c, &el) in g_phi_lap_out.coeffs_mut().iter_mut().zip(&md.eps_lap) {
            *c *= el;
        }
        accumulate_weighted(&mut i3, &md, &g_phi_lap_out, t_minus_s, w * i_unit, true);
        accumulate_weighted(
            &mut i4,
            &md,
            &t_m_phi.apply(&lap_rj, &rk),
            t_minus_s,
            -w * i_unit,
            true,
        );
        accumulate_weighted(&mut i5, &md, &t_m_phi.apply(&bj, &rk), t_minus_s, -w * i_unit, true);
        accumulate_weighted(
            &mut i6,
            &md,
            &t_m_phi.apply(&rj, &lap_rk),
            t_minus_s,
            -w * i_unit,
            true,
        );
        accumulate_weighted(&mut i7, &md, &t_m_phi.apply(&rj, &bk), t_minus_s, -w * i_unit, true);

        // second level integrands (expansion of I4)
        let lap2_rj = apply_eps_lap(&md, &lap_rj);
        let lap_bj = apply_eps_lap(&md, &bj);
        let mut g2_lap_out = t_m_phi2.apply(&lap_rj, &rk);
        for (c, &el) in g2_lap_out.coeffs_mut().iter_mut().zip(&md.eps_lap) {
            *c *= el;
        }
        let one = Complex::new(1.0, 0.0);
        accumulate_weighted(&mut i43, &md, &g2_lap_out, t_minus_s, w * one, true);
        accumulate_weighted(
            &mut i44,
            &md,
            &t_m_phi2.apply(&lap2_rj, &rk),
            t_minus_s,
            -w * one,
            true,
        );
        accumulate_weighted(
            &mut i45,
            &md,
            &t_m_phi2.apply(&lap_bj, &rk),
            t_minus_s,
            -w * one,
            true,
        );
        accumulate_weighted(
            &mut i46,
            &md,
            &t_m_phi2.apply(&lap_rj, &lap_rk),
            t_minus_s,
            -w * one,
            true,
        );
        accumulate_weighted(
            &mut i47,
            &md,
            &t_m_phi2.apply(&lap_rj, &bk),
            t_minus_s,
            -w * one,
            true,
        );
    }

    // boundary terms, first level
    let (rj_t, rk_t, _, _) = pick(&nodes[n]);
    let (rj_0, rk_0, _, _) = pick(&nodes[0]);
    let mut i1 = t_m_phi.apply(&rj_t, &rk_t);
    for (c, m) in i1.coeffs_mut().iter_mut().zip(&md.out_mult) {
        *c *= i_unit * m;
    }
    let mut i2 = SpectralField::zeros(&grid);
    accumulate_weighted(
        &mut i2,
        &md,
        &t_m_phi.apply(&rj_0, &rk_0),
        t,
        -i_unit,
        true,
    );

    // boundary terms, second level
    let lap_rj_t = apply_eps_lap(&md, &rj_t);
    let lap_rj_0 = apply_eps_lap(&md, &rj_0);
    let mut i41 = t_m_phi2.apply(&lap_rj_t, &rk_t);
    for (c, m) in i41.coeffs_mut().iter_mut().zip(&md.out_mult) {
        *c *= m; // -i * i = +1
    }
    let mut i42 = SpectralField::zeros(&grid);
    accumulate_weighted(
        &mut i42,
        &md,
        &t_m_phi2.apply(&lap_rj_0, &rk_0),
        t,
        -Complex::new(1.0, 0.0),
        true,
    );

    let mut rhs = i1.clone();
    for part in [&i2, &i3, &i4, &i5, &i6, &i7] {
        rhs.add_assign(part);
    }
    let lhs_norm = lhs.coeff_l2();
    let residual_first = lhs.diff_with(&rhs).coeff_l2() / lhs_norm.max(f64::MIN_POSITIVE);

    let mut rhs2 = i41.clone();
    for part in [&i42, &i43, &i44, &i45, &i46, &i47] {
        rhs2.add_assign(part);
    }
    let i4_norm = i4.coeff_l2();
    let residual_second = i4.diff_with(&rhs2).coeff_l2() / i4_norm.max(f64::MIN_POSITIVE);

    Ok(IdentityResidual {
        lhs_norm,
        residual_first,
        residual_second,
        nodes: nodes.len(),
    })
}

/// Synthetic low-frequency trajectory with closed-form sources, for
/// convergence studies: each selected mode carries a smooth amplitude
/// `a(s) = c0 + c1 s + c2 sin(omega s)` and the source is computed exactly as
/// `B_j = d/ds r_j - lambda_(j) r_j`.
pub struct SyntheticTrajectory {
    grid: Grid,
    disp: DispersionSymbol,
    modes: Vec<([i64; 3], Complex, Complex, f64)>, // (k, c0, c1-ish scale, omega)
}

impl SyntheticTrajectory {
    pub fn new(grid: &Grid, epsilon: f64, modes: Vec<([i64; 3], Complex, Complex, f64)>) -> Self {
        SyntheticTrajectory {
            grid: grid.clone(),
            disp: DispersionSymbol::new(Variant::Electron, epsilon),
            modes,
        }
    }

    fn lambda(&self, r: f64, j: usize) -> Complex {
        let (lp, lm) = self.disp.eigenvalues(r);
        if j == 1 {
            lm
        } else {
            lp
        }
    }
}

impl TrajectorySource for SyntheticTrajectory {
    fn node(&self, s: f64) -> TrajectoryNode {
        let mut r1 = SpectralField::zeros(&self.grid);
        let mut r2 = SpectralField::zeros(&self.grid);
        let mut b1 = SpectralField::zeros(&self.grid);
        let mut b2 = SpectralField::zeros(&self.grid);
        for (m, (k, c0, c1, omega)) in self.modes.iter().enumerate() {
            let Some(idx) = self.grid.index_of_k(k) else {
                continue;
            };
            let r = self.grid.xi_norm_sq(idx).sqrt();
            let amp = *c0 + *c1 * Complex::new(0.3 * s + (omega * s).sin(), 0.1 * s);
            let damp = *c1 * Complex::new(0.3 + omega * (omega * s).cos(), 0.1);
            // alternate modes between the two components
            if m % 2 == 0 {
                r1.coeffs_mut()[idx] += amp;
                b1.coeffs_mut()[idx] += damp - self.lambda(r, 1) * amp;
            } else {
                r2.coeffs_mut()[idx] += amp;
                b2.coeffs_mut()[idx] += damp - self.lambda(r, 2) * amp;
            }
        }
        TrajectoryNode { s, r1, r2, b1, b2 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn test_setup() -> (Grid, SyntheticTrajectory, IdentityConfig) {
        let grid = Grid::new(2, 32, 10.0 * std::f64::consts::PI, 2.0 / 3.0).unwrap();
        let eps = 1e-2;
        let modes = vec![
            ([1i64, 2, 0], Complex::new(0.8, 0.1), Complex::new(0.3, -0.2), 1.3),
            ([3, -1, 0], Complex::new(-0.5, 0.4), Complex::new(0.2, 0.1), 0.7),
            ([-2, 2, 0], Complex::new(0.3, -0.6), Complex::new(-0.25, 0.15), 1.9),
            ([0, 4, 0], Complex::new(0.2, 0.2), Complex::new(0.1, -0.3), 2.3),
        ];
        let src = SyntheticTrajectory::new(&grid, eps, modes);
        let cfg = IdentityConfig {
            epsilon: eps,
            kappa0: 1.0 / 200.0,
            j: 1,
            k: 1,
            n1: N1Slot::Modulus,
            t_final: 2.0,
        };
        (grid, src, cfg)
    }

    #[test]
    fn zero_trajectory_gives_zero_residual() {
        let (grid, _, cfg) = test_setup();
        let zero = SpectralField::zeros(&grid);
        let nodes: Vec<TrajectoryNode> = (0..=32)
            .map(|i| TrajectoryNode {
                s: cfg.t_final * i as f64 / 32.0,
                r1: zero.clone(),
                r2: zero.clone(),
                b1: zero.clone(),
                b2: zero.clone(),
            })
            .collect();
        let res = normal_form_identity_check(&cfg, &nodes).unwrap();
        assert_eq!(res.lhs_norm, 0.0);
        assert_eq!(res.residual_first, 0.0);
    }

    #[test]
    fn richardson_second_order_convergence() {
        let (_, src, cfg) = test_setup();
        let r64 = normal_form_identity_check(&cfg, &nodes_from_source(&src, cfg.t_final, 64))
            .unwrap();
        let r128 = normal_form_identity_check(&cfg, &nodes_from_source(&src, cfg.t_final, 128))
            .unwrap();
        assert!(r64.lhs_norm > 0.0);
        let order = (r64.residual_first / r128.residual_first).log2();
        assert!(
            (1.8..=2.2).contains(&order),
            "first-level order {order} (residuals {} -> {})",
            r64.residual_first,
            r128.residual_first
        );
        let order2 = (r64.residual_second / r128.residual_second).log2();
        assert!(
            (1.8..=2.2).contains(&order2),
            "second-level order {order2} (residuals {} -> {})",
            r64.residual_second,
            r128.residual_second
        );
    }

    #[test]
    fn residual_small_at_256_nodes() {
        let (_, src, cfg) = test_setup();
        let res = normal_form_identity_check(&cfg, &nodes_from_source(&src, cfg.t_final, 256))
            .unwrap();
        assert!(res.residual_first < 1e-4, "first {}", res.residual_first);
        assert!(res.residual_second < 1e-4, "second {}", res.residual_second);
    }

    #[test]
    fn other_sign_pairs_hold() {
        let (_, src, mut cfg) = test_setup();
        for (j, k) in [(1usize, 2usize), (2, 1), (2, 2)] {
            cfg.j = j;
            cfg.k = k;
            let coarse = normal_form_identity_check(&cfg, &nodes_from_source(&src, cfg.t_final, 64))
                .unwrap();
            let fine = normal_form_identity_check(&cfg, &nodes_from_source(&src, cfg.t_final, 128))
                .unwrap();
            assert!(
                fine.residual_first < 0.35 * coarse.residual_first,
                "(j,k)=({j},{k}): {} -> {}",
                coarse.residual_first,
                fine.residual_first
            );
        }
    }
}
