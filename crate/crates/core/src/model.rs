//! Two-mass plant: a slider of mass `m_s` driven along a base of mass `m_b`
//! that is tied to the ground by a spring `k` and a viscous damper `d`.
//!
//! The slider jerk is the input. Both the slider and the base respond to a
//! piecewise-constant jerk in closed form, which is what every other module
//! builds on.

use crate::error::{Error, Result};

/// Default sampling step for exported trajectories (s).
pub const DEFAULT_DT: f64 = 1e-4;

/// Upper bound on the number of rows a sampled trajectory may hold.
pub const MAX_GRID_ROWS: usize = 5_000_000;

/// Physical plant constants in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Slider mass (kg).
    pub m_s: f64,
    /// Base mass (kg).
    pub m_b: f64,
    /// Spring stiffness (N/m).
    pub k: f64,
    /// Viscous damping (kg/s).
    pub d: f64,
}

impl SystemParams {
    /// Validated constructor; also rejects overdamped plants.
    pub fn new(m_s: f64, m_b: f64, k: f64, d: f64) -> Result<Self> {
        let p = Self { m_s, m_b, k, d };
        p.derive()?;
        Ok(p)
    }

    /// Pick-and-place axis used throughout the numerical studies.
    pub fn table1() -> Self {
        Self { m_s: 25.0, m_b: 500.0, k: 15e6, d: 5e3 }
    }

    /// Laboratory test rig.
    pub fn lab() -> Self {
        Self { m_s: 4.6546, m_b: 26.9057, k: 117_499.0, d: 50.4 }
    }

    /// Same plant with a different damping coefficient.
    pub fn with_damping(&self, d: f64) -> Self {
        Self { d, ..*self }
    }

    pub fn derive(&self) -> Result<DerivedParams> {
        derive_params(self)
    }
}

/// Modal quantities of the base oscillation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    pub m_s: f64,
    pub k: f64,
    /// Total mass `m_s + m_b` (kg).
    pub m_g: f64,
    /// Damping rate (1/s).
    pub delta: f64,
    /// Undamped angular frequency (rad/s).
    pub omega0: f64,
    /// Damped angular frequency (rad/s).
    pub omega_d: f64,
    /// Normalized damping `delta / omega_d`.
    pub p1: f64,
}

impl DerivedParams {
    pub fn k_star(&self) -> f64 {
        self.k / self.m_g
    }

    pub fn d_star(&self) -> f64 {
        2.0 * self.delta
    }

    pub fn mass_ratio(&self) -> f64 {
        self.m_s / self.m_g
    }

    pub fn f0(&self) -> f64 {
        self.omega0 / std::f64::consts::TAU
    }

    pub fn fd(&self) -> f64 {
        self.omega_d / std::f64::consts::TAU
    }

    /// Static base deflection while the slider accelerates at `accel`.
    pub fn static_deflection(&self, accel: f64) -> f64 {
        -accel * self.m_s / self.k
    }
}

pub fn derive_params(p: &SystemParams) -> Result<DerivedParams> {
    for (name, value) in [("m_s", p.m_s), ("m_b", p.m_b), ("k", p.k)] {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonPositiveParameter { name, value });
        }
    }
    if !(p.d >= 0.0) || !p.d.is_finite() {
        return Err(Error::NonPositiveParameter { name: "d", value: p.d });
    }
    let m_g = p.m_s + p.m_b;
    let d_sq = p.d * p.d;
    let limit = 4.0 * p.k * m_g;
    if d_sq >= limit {
        return Err(Error::NotUnderdamped { d_sq, limit });
    }
    let delta = p.d / (2.0 * m_g);
    let omega0_sq = p.k / m_g;
    let omega_d = (omega0_sq - delta * delta).sqrt();
    Ok(DerivedParams {
        m_s: p.m_s,
        k: p.k,
        m_g,
        delta,
        omega0: omega0_sq.sqrt(),
        omega_d,
        p1: delta / omega_d,
    })
}

/// Slider kinematic bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicLimits {
    pub v_lim: f64,
    pub a_lim: f64,
    pub j_lim: f64,
}

impl KinematicLimits {
    pub fn new(v_lim: f64, a_lim: f64, j_lim: f64) -> Result<Self> {
        for (name, value) in [("v_lim", v_lim), ("a_lim", a_lim), ("j_lim", j_lim)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveParameter { name, value });
            }
        }
        Ok(Self { v_lim, a_lim, j_lim })
    }

    pub fn table2() -> Self {
        Self { v_lim: 1.5, a_lim: 20.0, j_lim: 800.0 }
    }

    pub fn lab() -> Self {
        Self { v_lim: 0.45, a_lim: 6.0, j_lim: 200.0 }
    }
}

/// Full plant state `[x, x_dot, z, z_dot, z_ddot]`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StateVector {
    pub x: f64,
    pub x_dot: f64,
    pub z: f64,
    pub z_dot: f64,
    pub z_ddot: f64,
}

impl StateVector {
    pub fn to_array(self) -> [f64; 5] {
        [self.x, self.x_dot, self.z, self.z_dot, self.z_ddot]
    }

    pub fn from_array(a: [f64; 5]) -> Self {
        Self { x: a[0], x_dot: a[1], z: a[2], z_dot: a[3], z_ddot: a[4] }
    }

    /// Base acceleration implied by the state.
    pub fn x_ddot(&self, dp: &DerivedParams) -> f64 {
        -dp.k_star() * self.x - dp.d_star() * self.x_dot - dp.mass_ratio() * self.z_ddot
    }
}

/// Right-hand side of the plant with jerk input `u`.
pub fn state_derivative(s: &StateVector, u: f64, dp: &DerivedParams) -> StateVector {
    StateVector {
        x: s.x_dot,
        x_dot: s.x_ddot(dp),
        z: s.z_dot,
        z_dot: s.z_ddot,
        z_ddot: u,
    }
}

/// One jump of the jerk signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JerkStep {
    /// Switch time (s).
    pub t: f64,
    /// Jump amplitude (m/s^3).
    pub a: f64,
}

/// Slider initial values.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SliderState {
    pub z: f64,
    pub z_dot: f64,
    pub z_ddot: f64,
}

/// Base response `(x, x_dot, x_ddot, x_dddot)`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BaseState {
    pub x: f64,
    pub x_dot: f64,
    pub x_ddot: f64,
    pub x_dddot: f64,
}

/// Piecewise-constant jerk written as a sum of steps,
/// `jerk(t) = sum a_i H(t - t_i)`.
///
/// The base always starts at rest; only the slider may carry initial values.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct JerkProfile {
    steps: Vec<JerkStep>,
    initial: SliderState,
}

impl JerkProfile {
    pub fn new(steps: Vec<JerkStep>) -> Result<Self> {
        if let Some(s) = steps.iter().find(|s| !s.t.is_finite() || !s.a.is_finite()) {
            return Err(Error::InvalidProfile(format!("non-finite step {s:?}")));
        }
        if let Some(first) = steps.first() {
            if first.t < 0.0 {
                return Err(Error::InvalidProfile(format!("first step at negative time {}", first.t)));
            }
        }
        if let Some(w) = steps.windows(2).find(|w| w[1].t <= w[0].t) {
            return Err(Error::InvalidProfile(format!(
                "step times must increase strictly ({} then {})",
                w[0].t, w[1].t
            )));
        }
        Ok(Self { steps, initial: SliderState::default() })
    }

    /// Builds a profile from `(time, amplitude)` pairs, merging coincident
    /// times and dropping zero amplitudes.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut pairs: Vec<(f64, f64)> = pairs.into_iter().collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut steps: Vec<JerkStep> = Vec::with_capacity(pairs.len());
        for (t, a) in pairs {
            match steps.last_mut() {
                Some(last) if last.t == t => last.a += a,
                _ => steps.push(JerkStep { t, a }),
            }
        }
        steps.retain(|s| s.a != 0.0);
        Self::new(steps)
    }

    pub fn with_initial(mut self, initial: SliderState) -> Self {
        self.initial = initial;
        self
    }

    pub fn steps(&self) -> &[JerkStep] {
        &self.steps
    }

    pub fn initial(&self) -> SliderState {
        self.initial
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last_time(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.t)
    }

    pub fn amplitude_sum(&self) -> f64 {
        self.steps.iter().map(|s| s.a).sum()
    }

    /// `true` when the jerk returns to zero after the last step.
    pub fn is_closed(&self, tol: f64) -> bool {
        self.amplitude_sum().abs() <= tol
    }

    /// Running jerk value at `t`, steps at exactly `t` included.
    pub fn jerk_at(&self, t: f64) -> f64 {
        self.steps.iter().take_while(|s| s.t <= t).map(|s| s.a).sum()
    }

    /// Largest magnitude the running jerk reaches.
    pub fn max_abs_jerk(&self) -> f64 {
        let mut level = 0.0f64;
        let mut max = 0.0f64;
        for s in &self.steps {
            level += s.a;
            max = max.max(level.abs());
        }
        max
    }

    /// Checks the running jerk against `j_lim` with relative slack `rel_tol`.
    pub fn respects_jerk_limit(&self, j_lim: f64, rel_tol: f64) -> bool {
        self.max_abs_jerk() <= j_lim * (1.0 + rel_tol)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            steps: self.steps.iter().map(|s| JerkStep { t: s.t, a: c * s.a }).collect(),
            initial: SliderState {
                z: c * self.initial.z,
                z_dot: c * self.initial.z_dot,
                z_ddot: c * self.initial.z_ddot,
            },
        }
    }
}

/// Slider position, velocity and acceleration at `t`.
pub fn slider_response(profile: &JerkProfile, t: f64) -> SliderState {
    let init = profile.initial;
    let mut acc = 0.0;
    let mut vel = 0.0;
    let mut pos = 0.0;
    for s in profile.steps.iter().take_while(|s| s.t <= t) {
        let tau = t - s.t;
        acc += s.a * tau;
        vel += s.a * tau * tau;
        pos += s.a * tau * tau * tau;
    }
    SliderState {
        z_ddot: init.z_ddot + acc,
        z_dot: init.z_dot + init.z_ddot * t + 0.5 * vel,
        z: init.z + init.z_dot * t + 0.5 * init.z_ddot * t * t + pos / 6.0,
    }
}

/// Base response to a unit jerk step applied `tau` seconds ago.
fn unit_step_kernel(tau: f64, dp: &DerivedParams) -> BaseState {
    let DerivedParams { delta, omega0, omega_d: w, .. } = *dp;
    let w0_sq = omega0 * omega0;
    let c1 = dp.mass_ratio() / w;
    let c2 = c1 / w0_sq;
    let c4 = c2 / w0_sq;
    let decay = (-delta * tau).exp();
    let (sin, cos) = (w * tau).sin_cos();
    let rot = w * cos + delta * sin;
    BaseState {
        x: c4 * (decay * ((w * w - delta * delta) * sin - 2.0 * w * delta * cos) - w * w0_sq * tau
            + 2.0 * delta * w),
        x_dot: c2 * (decay * rot - w),
        x_ddot: -c1 * decay * sin,
        x_dddot: -c1 * decay * rot,
    }
}

/// Base motion for a jerk profile with the base initially at rest.
///
/// An initial slider acceleration acts as an acceleration step at `t = 0`;
/// its response is the time derivative of the unit jerk-step response.
pub fn base_response(profile: &JerkProfile, t: f64, dp: &DerivedParams) -> BaseState {
    let mut out = BaseState::default();
    for s in profile.steps.iter().take_while(|s| s.t <= t) {
        let k = unit_step_kernel(t - s.t, dp);
        out.x += s.a * k.x;
        out.x_dot += s.a * k.x_dot;
        out.x_ddot += s.a * k.x_ddot;
        out.x_dddot += s.a * k.x_dddot;
    }
    let a0 = profile.initial.z_ddot;
    if a0 != 0.0 && t >= 0.0 {
        let k = unit_step_kernel(t, dp);
        let c1 = dp.mass_ratio() / dp.omega_d;
        let snap = c1 * dp.omega0 * dp.omega0 * (-dp.delta * t).exp() * (dp.omega_d * t).sin();
        out.x += a0 * k.x_dot;
        out.x_dot += a0 * k.x_ddot;
        out.x_ddot += a0 * k.x_dddot;
        out.x_dddot += a0 * snap;
    }
    out
}

/// Full state from the closed-form responses.
pub fn state_at(profile: &JerkProfile, t: f64, dp: &DerivedParams) -> StateVector {
    let s = slider_response(profile, t);
    let b = base_response(profile, t, dp);
    StateVector { x: b.x, x_dot: b.x_dot, z: s.z, z_dot: s.z_dot, z_ddot: s.z_ddot }
}

/// Uniform grid `0 = t_0 < ... < t_n = t_end` with step no larger than `dt`.
/// Returns the number of intervals and the actual step.
pub fn uniform_grid(dt: f64, t_end: f64, cap: usize) -> Result<(usize, f64)> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidInput(format!("time step must be positive, got {dt}")));
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(Error::InvalidInput(format!("end time must be non-negative, got {t_end}")));
    }
    let ratio = t_end / dt;
    if ratio + 1.0 > cap as f64 {
        return Err(Error::GridTooLarge { rows: (ratio.ceil() as usize).saturating_add(1), cap });
    }
    let intervals = (ratio - 1e-9).ceil().max(0.0) as usize;
    if intervals + 1 > cap {
        return Err(Error::GridTooLarge { rows: intervals + 1, cap });
    }
    let step = if intervals == 0 { dt } else { t_end / intervals as f64 };
    Ok((intervals, step))
}

/// Time-gridded plant trajectory.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SampledTrajectory {
    pub t: Vec<f64>,
    pub rows: Vec<StateVector>,
    /// Jerk input value at each grid point.
    pub jerk: Vec<f64>,
}

impl SampledTrajectory {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn last(&self) -> Option<(f64, StateVector)> {
        Some((*self.t.last()?, *self.rows.last()?))
    }
}

/// Evaluates the closed forms on a uniform grid.
pub fn sample_trajectory(
    profile: &JerkProfile,
    dt: f64,
    t_end: f64,
    dp: &DerivedParams,
) -> Result<SampledTrajectory> {
    sample_trajectory_capped(profile, dt, t_end, dp, MAX_GRID_ROWS)
}

pub fn sample_trajectory_capped(
    profile: &JerkProfile,
    dt: f64,
    t_end: f64,
    dp: &DerivedParams,
    cap: usize,
) -> Result<SampledTrajectory> {
    let (n, step) = uniform_grid(dt, t_end, cap)?;
    let mut out = SampledTrajectory {
        t: Vec::with_capacity(n + 1),
        rows: Vec::with_capacity(n + 1),
        jerk: Vec::with_capacity(n + 1),
    };
    for i in 0..=n {
        let t = if i == n { t_end } else { i as f64 * step };
        out.t.push(t);
        out.rows.push(state_at(profile, t, dp));
        out.jerk.push(profile.jerk_at(t));
    }
    Ok(out)
}
