//! Trajectory recording helpers: run a system, keep states on a stride.

use crate::DiagnosticsError;
use nsp_solver::rhs::SystemKind;
use nsp_solver::state::FluidState;
use nsp_solver::stepper::{advance, SingleFluid, SplitFluid, SplitState};

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<FluidState>,
}

#[derive(Debug, Clone)]
pub struct SplitTrajectory {
    pub times: Vec<f64>,
    pub main: Vec<FluidState>,
    pub perturb: Vec<FluidState>,
}

pub fn record_single(
    kind: SystemKind,
    nonlinear: bool,
    state0: FluidState,
    dt: f64,
    steps: usize,
    stride: usize,
) -> Result<Trajectory, DiagnosticsError> {
    let sys = if nonlinear {
        SingleFluid::new(kind)
    } else {
        SingleFluid::linear(kind)
    };
    let mut traj = Trajectory {
        times: Vec::new(),
        states: Vec::new(),
    };
    let stride = stride.max(1);
    let mut idx = 0usize;
    advance(&sys, state0, 0.0, dt, steps, |t, s| {
        if idx % stride == 0 || idx == steps {
            traj.times.push(t);
            traj.states.push(s.clone());
        }
        idx += 1;
    })?;
    Ok(traj)
}

pub fn record_split(
    state0: SplitState,
    dt: f64,
    steps: usize,
    stride: usize,
) -> Result<SplitTrajectory, DiagnosticsError> {
    let sys = SplitFluid::new();
    let mut traj = SplitTrajectory {
        times: Vec::new(),
        main: Vec::new(),
        perturb: Vec::new(),
    };
    let stride = stride.max(1);
    let mut idx = 0usize;
    advance(&sys, state0, 0.0, dt, steps, |t, s| {
        if idx % stride == 0 || idx == steps {
            traj.times.push(t);
            traj.main.push(s.main.clone());
            traj.perturb.push(s.perturb.clone());
        }
        idx += 1;
    })?;
    Ok(traj)
}

/// Fourth-order centered time derivative of a sampled series; one-sided
/// second-order stencils at the ends.
pub fn time_derivative(times: &[f64], values: &[f64]) -> Result<Vec<f64>, DiagnosticsError> {
    let n = values.len();
    if n < 5 {
        return Err(DiagnosticsError::TooFewSamples { need: 5, got: n });
    }
    let h = times[1] - times[0];
    let mut out = vec![0.0; n];
    for i in 0..n {
        out[i] = if i >= 2 && i + 2 < n {
            (-values[i + 2] + 8.0 * values[i + 1] - 8.0 * values[i - 1] + values[i - 2]) / (12.0 * h)
        } else if i == 0 {
            (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h)
        } else if i == n - 1 {
            (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h)
        } else if i == 1 {
            (values[2] - values[0]) / (2.0 * h)
        } else {
            (values[n - 1] - values[n - 3]) / (2.0 * h)
        };
    }
    Ok(out)
}

/// Trapezoid time integral of a sampled series.
pub fn time_integral(times: &[f64], values: &[f64]) -> f64 {
    times
        .windows(2)
        .zip(values.windows(2))
        .map(|(ts, vs)| 0.5 * (ts[1] - ts[0]) * (vs[0] + vs[1]))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_cubic_is_exact_inside() {
        let times: Vec<f64> = (0..40).map(|i| 0.1 * i as f64).collect();
        let values: Vec<f64> = times.iter().map(|t| 1.0 + t + t * t * t).collect();
        let d = time_derivative(&times, &values).unwrap();
        for i in 2..38 {
            let expect = 1.0 + 3.0 * times[i] * times[i];
            assert!((d[i] - expect).abs() < 1e-10, "i={i}");
        }
    }
}
