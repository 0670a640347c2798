//! Baselines, parameter studies and residual-oscillation fitting.

use std::f64::consts::{PI, TAU};

use nalgebra::{SMatrix, SVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{DerivedParams, JerkProfile, SystemParams};
use crate::planner::{plan_segment_with, JerkSegment, PlannerSettings, SegmentProblem};

/// Damping fractions of the reference plant used for the multi-section study.
pub const ADVANTAGE_DAMPING_FRACTIONS: [f64; 3] = [0.10, 0.05, 0.0];

/// Default number of acceleration samples in a sweep.
pub const SWEEP_POINTS: usize = 64;

/// Relative tolerance on the critical damping.
pub const CRITICAL_DAMPING_TOL: f64 = 1e-6;

const FIT_MAX_ITER: usize = 200;
const FIT_STEP_TOL: f64 = 1e-12;

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveParameter { name, value })
    }
}

/// Constant-jerk ramp from zero to `a_max`, ignoring the base.
pub fn scurve_segment(a_max: f64, j_max: f64) -> Result<JerkProfile> {
    check_positive("a_max", a_max)?;
    check_positive("j_max", j_max)?;
    JerkProfile::from_pairs([(0.0, j_max), (a_max / j_max, -j_max)])
}

/// Weights of the two-impulse zero-vibration shaper.
pub fn zv_weights(dp: &DerivedParams) -> (f64, f64) {
    let k = (-dp.delta * PI / dp.omega_d).exp();
    (1.0 / (1.0 + k), k / (1.0 + k))
}

/// Duration of the shaped ramp, `a_max/j_max + pi/omega_d`.
pub fn zv_duration(dp: &DerivedParams, a_max: f64, j_max: f64) -> f64 {
    a_max / j_max + PI / dp.omega_d
}

/// Constant-jerk ramp convolved with the zero-vibration shaper.
pub fn zv_segment(dp: &DerivedParams, a_max: f64, j_max: f64) -> Result<JerkProfile> {
    check_positive("a_max", a_max)?;
    check_positive("j_max", j_max)?;
    let (w1, w2) = zv_weights(dp);
    let ramp = a_max / j_max;
    let delay = PI / dp.omega_d;
    JerkProfile::from_pairs([
        (0.0, w1 * j_max),
        (ramp, -w1 * j_max),
        (delay, w2 * j_max),
        (ramp + delay, -w2 * j_max),
    ])
}

/// Jerk limit tied to the damped frequency, `a_max omega_d / (2 pi)`.
pub fn default_jerk_limit(a_max: f64, omega_d: f64) -> f64 {
    a_max * omega_d / TAU
}

fn negative_sections(sys: &SystemParams, a_max: f64, j_max: f64, settings: &PlannerSettings) -> Result<usize> {
    Ok(plan_segment_with(sys, a_max, j_max, settings)?.n_el())
}

/// Largest damping at which the planned segment still needs two or more
/// negative sections, found by bisection on `d`.
///
/// Starts from the template's damping and widens the bracket upwards if the
/// template itself needs several sections.
pub fn critical_damping(sys: &SystemParams, a_max: f64, j_max: f64) -> Result<f64> {
    critical_damping_with(sys, a_max, j_max, &PlannerSettings::default())
}

pub fn critical_damping_with(
    sys: &SystemParams,
    a_max: f64,
    j_max: f64,
    settings: &PlannerSettings,
) -> Result<f64> {
    let at = |d: f64| negative_sections(&sys.with_damping(d), a_max, j_max, settings);
    if at(0.0)? < 2 {
        return Err(Error::NeverMultiple { a_max });
    }
    let d_limit = 2.0 * (sys.k * (sys.m_s + sys.m_b)).sqrt();
    let mut lo = 0.0;
    let mut hi = if sys.d > 0.0 { sys.d } else { 1e-6 * d_limit };
    while at(hi)? >= 2 {
        lo = hi;
        hi *= 2.0;
        if hi >= d_limit {
            return Err(Error::PlanningFailed(format!(
                "several negative sections up to critical damping at a_max = {a_max}"
            )));
        }
    }
    while hi - lo > CRITICAL_DAMPING_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if at(mid)? >= 2 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Optimal against single-section segment at one acceleration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvantageRow {
    pub d: f64,
    pub a_max: f64,
    pub n_el: usize,
    pub t_f_opt: f64,
    pub t_f_single: f64,
    /// `t_f_single - t_f_opt` (s).
    pub abs: f64,
    /// `abs / t_f_single`.
    pub rel: f64,
    /// Saving over four concatenated segments (s).
    pub abs_4seg: f64,
    pub rel_4seg: f64,
}

/// Time saved by allowing several negative sections, for every pair of
/// damping value and acceleration.
pub fn time_advantage(sys: &SystemParams, a_values: &[f64], d_values: &[f64], j_max: f64) -> Result<Vec<AdvantageRow>> {
    let single = PlannerSettings::default().single_section();
    let full = PlannerSettings::default();
    d_values
        .iter()
        .flat_map(|&d| a_values.iter().map(move |&a| (d, a)))
        .map(|(d, a_max)| {
            let plant = sys.with_damping(d);
            let opt = plan_segment_with(&plant, a_max, j_max, &full)?;
            let one = plan_segment_with(&plant, a_max, j_max, &single)?;
            let abs = one.t_f - opt.t_f;
            Ok(AdvantageRow {
                d,
                a_max,
                n_el: opt.n_el(),
                t_f_opt: opt.t_f,
                t_f_single: one.t_f,
                abs,
                rel: abs / one.t_f,
                abs_4seg: 4.0 * abs,
                rel_4seg: 4.0 * abs / (4.0 * one.t_f),
            })
        })
        .collect()
}

/// Samples of the squared-length mismatch over one search interval.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorCurve {
    pub a_max: f64,
    /// `(phi_f, error)` pairs over `[a*, a* + pi)`.
    pub points: Vec<(f64, f64)>,
    /// Terminal angle returned by the planner.
    pub root: f64,
}

impl ErrorCurve {
    pub fn sign_changes(&self) -> usize {
        self.points.windows(2).filter(|w| (w[0].1 < 0.0) != (w[1].1 < 0.0)).count()
    }
}

pub fn error_curve(sys: &SystemParams, a_values: &[f64], j_max: f64, n_points: usize) -> Result<Vec<ErrorCurve>> {
    if n_points < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 points, got {n_points}")));
    }
    let settings = PlannerSettings::default();
    a_values
        .iter()
        .map(|&a_max| {
            let problem = SegmentProblem::new(sys, a_max, j_max, &settings)?;
            let points = (0..n_points)
                .map(|i| {
                    let phi = problem.a_star + PI * i as f64 / n_points as f64;
                    problem.length_error(phi).map(|e| (phi, e.value))
                })
                .collect::<Result<_>>()?;
            let root = plan_segment_with(sys, a_max, j_max, &settings)?.phi_f;
            Ok(ErrorCurve { a_max, points, root })
        })
        .collect()
}

/// `offset + a0 e^{-delta tau} sin(omega_d tau + phi0)` fitted to samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualFit {
    pub a0: f64,
    pub delta: f64,
    pub omega_d: f64,
    pub phi0: f64,
    /// Constant level the oscillation decays to (m).
    pub offset: f64,
    pub rms: f64,
    pub iterations: usize,
}

impl ResidualFit {
    pub fn eval(&self, tau: f64) -> f64 {
        self.offset + self.a0 * (-self.delta * tau).exp() * (self.omega_d * tau + self.phi0).sin()
    }
}

/// Parameters `(offset, A, B, delta, omega)` of
/// `offset + e^{-delta tau} (A sin(omega tau) + B cos(omega tau))`.
type FitParams = SVector<f64, 5>;

fn fit_model(p: &FitParams, tau: f64) -> (f64, [f64; 5]) {
    let (c, a, b, delta, w) = (p[0], p[1], p[2], p[3], p[4]);
    let e = (-delta * tau).exp();
    let (s, co) = (w * tau).sin_cos();
    let osc = e * (a * s + b * co);
    (c + osc, [1.0, e * s, e * co, -tau * osc, tau * e * (a * co - b * s)])
}

fn cost(p: &FitParams, data: &[(f64, f64)]) -> f64 {
    data.iter().map(|&(tau, y)| (y - fit_model(p, tau).0).powi(2)).sum()
}

/// Offset and quadrature amplitudes for fixed decay and frequency.
fn linear_amplitudes(data: &[(f64, f64)], delta: f64, w: f64) -> Option<(f64, f64, f64)> {
    let mut ata = SMatrix::<f64, 3, 3>::zeros();
    let mut aty = SVector::<f64, 3>::zeros();
    for &(tau, y) in data {
        let e = (-delta * tau).exp();
        let (s, c) = (w * tau).sin_cos();
        let row = SVector::<f64, 3>::new(1.0, e * s, e * c);
        ata += row * row.transpose();
        aty += row * y;
    }
    let x = ata.cholesky()?.solve(&aty);
    Some((x[0], x[1], x[2]))
}

/// Angular frequency from the mean spacing of mean-level crossings.
fn crossing_frequency(data: &[(f64, f64)]) -> Option<f64> {
    let mean = data.iter().map(|d| d.1).sum::<f64>() / data.len() as f64;
    let crossings: Vec<f64> = data
        .windows(2)
        .filter(|w| (w[0].1 - mean) * (w[1].1 - mean) < 0.0)
        .map(|w| {
            let (y0, y1) = (w[0].1 - mean, w[1].1 - mean);
            w[0].0 + (w[1].0 - w[0].0) * y0 / (y0 - y1)
        })
        .collect();
    if crossings.len() < 2 {
        return None;
    }
    let spacing = (crossings[crossings.len() - 1] - crossings[0]) / (crossings.len() - 1) as f64;
    Some(PI / spacing)
}

/// Damped-sinusoid fit to the samples with `t >= t_start`, `tau = t - t_start`.
///
/// `seed` supplies starting values `(delta, omega_d)`; without it the
/// frequency comes from level crossings and the decay starts at zero.
/// Levenberg-Marquardt refines all parameters.
pub fn fit_residual(samples: &[(f64, f64)], t_start: f64, seed: Option<(f64, f64)>) -> Result<ResidualFit> {
    let data: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.0 >= t_start)
        .map(|&(t, y)| (t - t_start, y))
        .collect();
    if data.len() < 8 {
        return Err(Error::InvalidInput(format!("need at least 8 samples after t_start, got {}", data.len())));
    }
    if data.iter().any(|d| !d.0.is_finite() || !d.1.is_finite()) {
        return Err(Error::InvalidInput("samples must be finite".into()));
    }
    let amplitude = data.iter().map(|d| d.1.abs()).fold(0.0, f64::max);
    let level = data[0].1;
    let (delta0, w0) = match seed {
        Some((delta, w)) => (delta, w),
        None => {
            let span = data[data.len() - 1].0 - data[0].0;
            (0.0, crossing_frequency(&data).unwrap_or(TAU / span.max(f64::MIN_POSITIVE)))
        }
    };
    check_positive("omega_d", w0)?;
    if data.iter().all(|d| d.1 == level) {
        return Ok(ResidualFit { a0: 0.0, delta: delta0, omega_d: w0, phi0: 0.0, offset: level, rms: 0.0, iterations: 0 });
    }
    let (c, a, b) = linear_amplitudes(&data, delta0, w0).unwrap_or((level, 0.0, 0.0));
    let mut p = FitParams::new(c, a, b, delta0, w0);
    let mut current = cost(&p, &data);
    let mut mu = 1e-3;
    let mut iterations = 0;
    while iterations < FIT_MAX_ITER {
        iterations += 1;
        let mut jtj = SMatrix::<f64, 5, 5>::zeros();
        let mut jtr = FitParams::zeros();
        for &(tau, y) in &data {
            let (m, g) = fit_model(&p, tau);
            let g = FitParams::from(g);
            jtj += g * g.transpose();
            jtr += g * (y - m);
        }
        let mut improved = false;
        let mut step_size = 0.0;
        for _ in 0..30 {
            let mut lhs = jtj;
            for i in 0..5 {
                lhs[(i, i)] += mu * jtj[(i, i)].max(f64::MIN_POSITIVE);
            }
            let Some(chol) = lhs.cholesky() else {
                mu *= 10.0;
                continue;
            };
            let step = chol.solve(&jtr);
            let trial = p + step;
            let trial_cost = cost(&trial, &data);
            if trial_cost <= current {
                step_size = step.norm() / p.norm().max(f64::MIN_POSITIVE);
                p = trial;
                current = trial_cost;
                mu = (mu / 3.0).max(1e-15);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if !improved || step_size < FIT_STEP_TOL {
            break;
        }
    }
    let rms = (current / data.len() as f64).sqrt();
    if !(rms <= amplitude) {
        return Err(Error::FitDiverged { rms, amplitude });
    }
    let (mut phi0, mut w) = (p[2].atan2(p[1]), p[4]);
    if w < 0.0 {
        // sin(-w tau + phi) = sin(w tau + pi - phi)
        w = -w;
        phi0 = PI - phi0;
    }
    Ok(ResidualFit {
        a0: p[1].hypot(p[2]),
        delta: p[3],
        omega_d: w,
        phi0: wrap_phase(phi0),
        offset: p[0],
        rms,
        iterations,
    })
}

fn wrap_phase(phi: f64) -> f64 {
    let w = phi - TAU * ((phi + PI) / TAU).floor();
    if w <= -PI {
        w + TAU
    } else {
        w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Ocp,
    Zv,
    Scurve,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Ocp, Method::Zv, Method::Scurve];

    pub fn label(self) -> &'static str {
        match self {
            Method::Ocp => "ocp",
            Method::Zv => "zv",
            Method::Scurve => "scurve",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.label() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown method `{s}` (expected ocp, zv or scurve)")))
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Terminal time of one method at one acceleration.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub a_max: f64,
    pub method: Method,
    /// `None` when planning failed; `status` carries the reason.
    pub t_f: Option<f64>,
    pub status: String,
}

/// Profile and terminal time of a method.
pub fn method_segment(
    sys: &SystemParams,
    method: Method,
    a_max: f64,
    j_max: f64,
    settings: &PlannerSettings,
) -> Result<(JerkProfile, f64)> {
    match method {
        Method::Ocp => {
            let seg: JerkSegment = plan_segment_with(sys, a_max, j_max, settings)?;
            Ok((seg.profile(), seg.t_f))
        }
        Method::Zv => {
            let dp = sys.derive()?;
            Ok((zv_segment(&dp, a_max, j_max)?, zv_duration(&dp, a_max, j_max)))
        }
        Method::Scurve => Ok((scurve_segment(a_max, j_max)?, a_max / j_max)),
    }
}

/// Terminal times for every acceleration and method; failures become rows
/// with an error status. Rows are ordered by acceleration, then method.
pub fn sweep(
    sys: &SystemParams,
    a_values: &[f64],
    methods: &[Method],
    j_max: f64,
    settings: &PlannerSettings,
) -> Vec<SweepRow> {
    let pairs: Vec<(f64, Method)> = a_values
        .iter()
        .flat_map(|&a| methods.iter().map(move |&m| (a, m)))
        .collect();
    pairs
        .par_iter()
        .map(|&(a_max, method)| match method_segment(sys, method, a_max, j_max, settings) {
            Ok((_, t_f)) => SweepRow { a_max, method, t_f: Some(t_f), status: "ok".into() },
            Err(e) => SweepRow { a_max, method, t_f: None, status: e.to_string() },
        })
        .collect()
}

/// `n` accelerations from `lo` to `hi`, evenly or geometrically spaced.
pub fn acceleration_grid(lo: f64, hi: f64, n: usize, log: bool) -> Result<Vec<f64>> {
    if n == 0 || hi < lo {
        return Ok(Vec::new());
    }
    check_positive("a_min", lo)?;
    if n == 1 {
        return Ok(vec![lo]);
    }
    let step = |i: usize| i as f64 / (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else if log {
                lo * (hi / lo).powf(step(i))
            } else {
                lo + (hi - lo) * step(i)
            }
        })
        .collect())
}
