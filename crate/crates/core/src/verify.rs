//! Independent oracles: fixed-step integration of the state-space model and
//! an exhaustive search over single-section switch times.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{
    state_derivative, uniform_grid, DerivedParams, JerkProfile, StateVector, SystemParams,
    MAX_GRID_ROWS,
};
pub use crate::model::SampledTrajectory;

fn axpy(s: &StateVector, h: f64, d: &StateVector) -> StateVector {
    let (a, b) = (s.to_array(), d.to_array());
    StateVector::from_array(std::array::from_fn(|i| a[i] + h * b[i]))
}

fn rk4_step(s: &StateVector, u: f64, h: f64, dp: &DerivedParams) -> StateVector {
    let k1 = state_derivative(s, u, dp);
    let k2 = state_derivative(&axpy(s, 0.5 * h, &k1), u, dp);
    let k3 = state_derivative(&axpy(s, 0.5 * h, &k2), u, dp);
    let k4 = state_derivative(&axpy(s, h, &k3), u, dp);
    let (s, k1, k2, k3, k4) = (s.to_array(), k1.to_array(), k2.to_array(), k3.to_array(), k4.to_array());
    StateVector::from_array(std::array::from_fn(|i| {
        s[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
    }))
}

/// Classical RK4 on the grid of [`crate::model::sample_trajectory`]. Steps
/// that contain jerk switches are split there, so every substep sees a
/// constant input.
pub fn rk4_integrate(sys: &SystemParams, profile: &JerkProfile, dt: f64, t_end: f64) -> Result<SampledTrajectory> {
    rk4_integrate_capped(sys, profile, dt, t_end, MAX_GRID_ROWS)
}

pub fn rk4_integrate_capped(
    sys: &SystemParams,
    profile: &JerkProfile,
    dt: f64,
    t_end: f64,
    cap: usize,
) -> Result<SampledTrajectory> {
    let dp = sys.derive()?;
    let (n, step) = uniform_grid(dt, t_end, cap)?;
    let init = profile.initial();
    let mut state = StateVector { z: init.z, z_dot: init.z_dot, z_ddot: init.z_ddot, ..Default::default() };
    let switches: Vec<f64> = profile.steps().iter().map(|s| s.t).collect();
    let mut out = SampledTrajectory {
        t: Vec::with_capacity(n + 1),
        rows: Vec::with_capacity(n + 1),
        jerk: Vec::with_capacity(n + 1),
    };
    out.t.push(0.0);
    out.rows.push(state);
    out.jerk.push(profile.jerk_at(0.0));
    let mut next_switch = switches.partition_point(|&t| t <= 0.0);
    for i in 1..=n {
        let t0 = out.t[i - 1];
        let t1 = if i == n { t_end } else { i as f64 * step };
        let mut a = t0;
        while next_switch < switches.len() && switches[next_switch] < t1 {
            let b = switches[next_switch];
            if b > a {
                state = rk4_step(&state, profile.jerk_at(0.5 * (a + b)), b - a, &dp);
                a = b;
            }
            next_switch += 1;
        }
        if t1 > a {
            state = rk4_step(&state, profile.jerk_at(0.5 * (a + t1)), t1 - a, &dp);
        }
        out.t.push(t1);
        out.rows.push(state);
        out.jerk.push(profile.jerk_at(t1));
    }
    Ok(out)
}

/// Smallest-`t_f` grid candidate of the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForceResult {
    pub t2: f64,
    pub t3: f64,
    pub t_f: f64,
    /// Number of `(t_2, t_f)` pairs evaluated.
    pub candidates: usize,
}

/// Response of `x`, `x_dot` and `x_ddot` to a unit jerk step `tau` ago.
fn kernel(tau: f64, dp: &DerivedParams) -> [f64; 3] {
    let DerivedParams { delta, omega0, omega_d: w, .. } = *dp;
    let w0_sq = omega0 * omega0;
    let c1 = dp.mass_ratio() / w;
    let c2 = c1 / w0_sq;
    let c4 = c2 / w0_sq;
    let decay = (-delta * tau).exp();
    let (sin, cos) = (w * tau).sin_cos();
    [
        c4 * (decay * ((w * w - delta * delta) * sin - 2.0 * w * delta * cos) - w * w0_sq * tau + 2.0 * delta * w),
        c2 * (decay * (w * cos + delta * sin) - w),
        -c1 * decay * sin,
    ]
}

/// Exhaustive search over `+j, -j, +j` profiles with switch times `t_2 <= t_3`.
///
/// `t_f` runs over `a/j + m g` and `t_2` over `k g` for grid step `g`. The
/// terminal acceleration fixes `t_3 = t_2 + (t_f - a/j)/2`. A candidate is
/// feasible when the linearized correction that zeroes the base's deviation
/// from its static deflection and its velocity moves neither `t_2` nor
/// `t_f` by more than one cell. The first `t_f` with a feasible `t_2` is
/// returned.
pub fn brute_force_n4(sys: &SystemParams, a_max: f64, j_max: f64, grid_res: f64) -> Result<BruteForceResult> {
    let dp = sys.derive()?;
    for (name, value) in [("a_max", a_max), ("j_max", j_max), ("grid_res", grid_res)] {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonPositiveParameter { name, value });
        }
    }
    let t_min = a_max / j_max;
    let span = std::f64::consts::PI / dp.omega_d;
    let rows = (span / grid_res).ceil() as usize;
    let static_gain = dp.m_s / dp.k;
    let mut candidates = 0;
    for m in 0..rows {
        let t_f = t_min + m as f64 * grid_res;
        let width = 0.5 * (t_f - t_min);
        let k_max = ((t_f - width) / grid_res).floor() as usize;
        candidates += k_max + 1;
        let [xf, vf, af] = kernel(t_f, &dp);
        let best = (0..=k_max)
            .into_par_iter()
            .filter_map(|k| {
                let t2 = k as f64 * grid_res;
                let t3 = (t2 + width).min(t_f);
                let [x2, v2, a2] = kernel(t_f - t2, &dp);
                let [x3, v3, a3] = kernel(t_f - t3, &dp);
                // Jerk steps +j at 0, -2j at t2, +2j at t3, -j at t_f.
                let x = j_max * (xf - 2.0 * x2 + 2.0 * x3);
                let v = j_max * (vf - 2.0 * v2 + 2.0 * v3);
                let dev = x + a_max * static_gain;
                // Newton correction towards an exact solution, with t3
                // following t2 and t_f.
                let jac = [
                    [2.0 * j_max * (v2 - v3), j_max * (vf - 2.0 * v2 + v3)],
                    [2.0 * j_max * (a2 - a3), j_max * (af - 2.0 * a2 + a3)],
                ];
                let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
                if det == 0.0 {
                    return None;
                }
                let e2 = (jac[1][1] * dev - jac[0][1] * v) / det;
                let ef = (jac[0][0] * v - jac[1][0] * dev) / det;
                let dist = e2.abs().max(ef.abs());
                (dist <= grid_res).then_some((k, dist, t3))
            })
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        if let Some((k, _, t3)) = best {
            return Ok(BruteForceResult { t2: k as f64 * grid_res, t3, t_f, candidates });
        }
    }
    Err(Error::NoFeasible)
}
