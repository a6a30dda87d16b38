//! Scaling-and-squaring matrix exponential for real `2 x 2` matrices.
//! Test oracle only: the production path always evaluates the closed forms.
//!
//! Near the eigenvalue crossing the matrix is close to defective with norm
//! `~ eps r^2 t`, and the squaring chain amplifies rounding by the square of
//! that norm; the oracle therefore carries the chain in compensated
//! double-double arithmetic so its own error stays far below the 1e-10
//! agreement target.

use crate::dispersion::DispersionSymbol;

type M2 = [[f64; 2]; 2];

/// Double-double value `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let v = s - a;
        let e = (a - (s - v)) + (b - v);
        Dd { hi: s, lo: e }
    }

    fn two_prod(a: f64, b: f64) -> Dd {
        let p = a * b;
        let e = a.mul_add(b, -p);
        Dd { hi: p, lo: e }
    }

    fn add(self, other: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, other.hi);
        let lo = s.lo + self.lo + other.lo;
        let out = Dd::two_sum(s.hi, lo);
        Dd {
            hi: out.hi,
            lo: out.lo,
        }
    }

    fn mul(self, other: Dd) -> Dd {
        let p = Dd::two_prod(self.hi, other.hi);
        let lo = p.lo + self.hi * other.lo + self.lo * other.hi;
        let out = Dd::two_sum(p.hi, lo);
        Dd {
            hi: out.hi,
            lo: out.lo,
        }
    }

    fn scale(self, x: f64) -> Dd {
        self.mul(Dd::from(x))
    }
}

type M2d = [[Dd; 2]; 2];

fn matmul_dd(a: &M2d, b: &M2d) -> M2d {
    let mut out = [[Dd::ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0].mul(b[0][j]).add(a[i][1].mul(b[1][j]));
        }
    }
    out
}

fn max_abs_dd(a: &M2d) -> f64 {
    a.iter()
        .flatten()
        .map(|x| x.hi.abs())
        .fold(0.0, f64::max)
}

/// Double-double scaling-and-squaring exponential.
fn expm2_dd(m: &M2) -> M2 {
    let norm = m.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max);
    let s = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as i32
    } else {
        0
    };
    let scale = 0.5f64.powi(s);
    let b: M2d = [
        [Dd::from(m[0][0]).scale(scale), Dd::from(m[0][1]).scale(scale)],
        [Dd::from(m[1][0]).scale(scale), Dd::from(m[1][1]).scale(scale)],
    ];
    let identity: M2d = [
        [Dd::from(1.0), Dd::ZERO],
        [Dd::ZERO, Dd::from(1.0)],
    ];
    let mut sum = identity;
    let mut term = identity;
    for k in 1..=40 {
        term = matmul_dd(&term, &b);
        let inv_k = 1.0 / k as f64;
        for row in &mut term {
            for x in row.iter_mut() {
                *x = x.scale(inv_k);
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                sum[i][j] = sum[i][j].add(term[i][j]);
            }
        }
        if max_abs_dd(&term) < 1e-34 * max_abs_dd(&sum) {
            break;
        }
    }
    let mut out = sum;
    for _ in 0..s {
        out = matmul_dd(&out, &out);
    }
    [
        [out[0][0].to_f64(), out[0][1].to_f64()],
        [out[1][0].to_f64(), out[1][1].to_f64()],
    ]
}

fn matmul(a: &M2, b: &M2) -> M2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn max_abs(a: &M2) -> f64 {
    a.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max)
}

/// `exp(m)` by scaling-and-squaring with a Taylor series on the scaled block.
pub fn expm2(m: &M2) -> M2 {
    let norm = max_abs(m);
    let s = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scale = 1.0 / 2.0f64.powi(s as i32);
    let b = [
        [m[0][0] * scale, m[0][1] * scale],
        [m[1][0] * scale, m[1][1] * scale],
    ];
    // Taylor on the scaled matrix; norm <= 0.25 so ~20 terms reach eps
    let mut sum: M2 = [[1.0, 0.0], [0.0, 1.0]];
    let mut term: M2 = [[1.0, 0.0], [0.0, 1.0]];
    for k in 1..=30 {
        term = matmul(&term, &b);
        let inv_k = 1.0 / k as f64;
        for row in &mut term {
            for x in row.iter_mut() {
                *x *= inv_k;
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                sum[i][j] += term[i][j];
            }
        }
        if max_abs(&term) < 1e-20 * max_abs(&sum) {
            break;
        }
    }
    let mut out = sum;
    for _ in 0..s {
        out = matmul(&out, &out);
    }
    out
}

/// `exp(-t A(xi))` with `A = [[0, w], [-w, 2 eps r^2]]`, double-double
/// scaling-and-squaring: intermediates decay monotonically (no overflow) and
/// the compensated arithmetic keeps the near-defective squaring chain far
/// below the agreement tolerance.
pub fn expm_neg_t_a(t: f64, r: f64, disp: &DispersionSymbol) -> M2 {
    let w = disp.wave_symbol(r);
    let a2 = 2.0 * disp.epsilon * r * r;
    expm2_dd(&[[0.0, -t * w], [t * w, -t * a2]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_zero_is_identity() {
        let e = expm2(&[[0.0, 0.0], [0.0, 0.0]]);
        assert_eq!(e, [[1.0, 0.0], [0.0, 1.0]]);
    }

    #[test]
    fn diagonal_case() {
        let e = expm2(&[[-3.0, 0.0], [0.0, 2.0]]);
        assert!((e[0][0] - (-3.0f64).exp()).abs() < 1e-14);
        assert!((e[1][1] - 2.0f64.exp()).abs() < 1e-13);
        assert!(e[0][1].abs() + e[1][0].abs() < 1e-16);
    }

    #[test]
    fn rotation_case() {
        // exp([[0, -w],[w, 0]] t) is the rotation matrix
        let w = 2.3;
        let t = 1.7;
        let e = expm2(&[[0.0, -w * t], [w * t, 0.0]]);
        assert!((e[0][0] - (w * t).cos()).abs() < 1e-12);
        assert!((e[1][0] - (w * t).sin()).abs() < 1e-12);
    }

    #[test]
    fn jordan_block_at_crossing() {
        // defective matrix [[l, 1], [0, l]]: exp = e^l [[1, 1], [0, 1]]
        let l = -0.5;
        let e = expm2(&[[l, 1.0], [0.0, l]]);
        let el = l.exp();
        assert!((e[0][0] - el).abs() < 1e-13);
        assert!((e[0][1] - el).abs() < 1e-13);
        assert!((e[1][1] - el).abs() < 1e-13);
    }
}
