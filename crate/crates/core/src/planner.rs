//! Time-optimal jerk segments.
//!
//! A segment starts with positive jerk, alternates through `n_el` negative
//! sections and ends with positive jerk. The base comes to rest exactly when
//! the polygon `sum a*_i e^{(p1 + j) phi_i}` closes. Its first and last side
//! depend on `phi_f` alone, the interior sides follow from the switching
//! structure, so closing it is a bounded line search over `phi_f`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{
    base_response, slider_response, DerivedParams, JerkProfile, SystemParams,
};
use crate::switching::{
    solve_structure_limited, switching_fn, SwitchingStructure, StructureTable,
};

/// Line-search iterations used in double precision.
pub const DEFAULT_N_ITER: usize = 48;

/// Iteration count quoted for single-precision controllers.
pub const SINGLE_PRECISION_N_ITER: usize = 18;

/// Accepted polygon closure residual (dimensionless).
pub const CLOSURE_TOL: f64 = 1e-8;

/// Closure residual accepted when `phi_f` is only resolved to `f32`.
pub const SINGLE_PRECISION_CLOSURE_TOL: f64 = 1e-5;

/// Accepted terminal residuals (SI units).
pub const TERMINAL_TOL: f64 = 1e-9;

/// Relative slack on the terminal acceleration before an overshoot is flagged.
pub const OVERSHOOT_REL_TOL: f64 = 1e-12;

/// Smallest polygon side length considered non-degenerate.
const MIN_SIDE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Double,
    /// Line-search state kept in `f32`, as on a PLC.
    Single,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannerSettings {
    pub n_iter: usize,
    pub precision: Precision,
    /// Interpolate structures from a precomputed table instead of solving
    /// each candidate exactly.
    pub precompute: bool,
    /// Cap on the number of negative sections; `Some(1)` forces a single one.
    pub max_sections: Option<usize>,
    pub closure_tol: f64,
    pub terminal_tol: f64,
}

impl Default for PlannerSettings {
    fn default() -> Self {
        Self {
            n_iter: DEFAULT_N_ITER,
            precision: Precision::Double,
            precompute: false,
            max_sections: None,
            closure_tol: CLOSURE_TOL,
            terminal_tol: TERMINAL_TOL,
        }
    }
}

impl PlannerSettings {
    pub fn single_precision() -> Self {
        Self {
            n_iter: SINGLE_PRECISION_N_ITER,
            precision: Precision::Single,
            closure_tol: SINGLE_PRECISION_CLOSURE_TOL,
            ..Self::default()
        }
    }

    pub fn with_iterations(mut self, n_iter: usize) -> Self {
        self.n_iter = n_iter;
        self
    }

    pub fn single_section(mut self) -> Self {
        self.max_sections = Some(1);
        self
    }
}

/// Largest `z_ddot` on `[0, t_f]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OvershootReport {
    pub max_accel: f64,
    pub exceeds: bool,
    pub argmax_t: f64,
}

/// A planned jerk segment.
#[derive(Debug, Clone, PartialEq)]
pub struct JerkSegment {
    pub a_max: f64,
    pub j_max: f64,
    pub t_f: f64,
    pub phi_f: f64,
    /// Switch times `t_1 = 0 < t_2 < ... < t_n = t_f`.
    pub times: Vec<f64>,
    /// Normalized step amplitudes `(+1, -2, +2, ..., -2, +2, -1)`.
    pub coeffs: Vec<f64>,
    pub structure: SwitchingStructure,
    pub overshoot: OvershootReport,
    /// `phi_f` candidate evaluated at each line-search iteration.
    pub trace: Vec<f64>,
    /// Polygon closure residual at the returned angles.
    pub closure: f64,
}

impl JerkSegment {
    pub fn n(&self) -> usize {
        self.times.len()
    }

    pub fn n_el(&self) -> usize {
        self.structure.n_el
    }

    /// Jerk steps in physical units; zero-width sections collapse.
    pub fn profile(&self) -> JerkProfile {
        JerkProfile::from_pairs(self.times.iter().zip(&self.coeffs).map(|(&t, &c)| (t, c * self.j_max)))
            .expect("segment switch times are ordered")
    }

    /// Total duration of the negative sections (s).
    pub fn delta_t_abs(&self) -> f64 {
        self.times[1..self.n() - 1].chunks(2).map(|c| c[1] - c[0]).sum()
    }
}

/// Step amplitudes for `n_el` negative sections.
pub fn coefficients(n_el: usize) -> Vec<f64> {
    let n = 2 * n_el + 2;
    (1..=n)
        .map(|i| match i {
            1 => 1.0,
            _ if i == n => -1.0,
            _ if i % 2 == 0 => -2.0,
            _ => 2.0,
        })
        .collect()
}

fn rotor(p1: f64) -> Complex64 {
    Complex64::new(p1, 1.0)
}

/// First plus last polygon side, `1 - e^{(p1 + j) phi_f}`.
pub fn ell_m1(phi_f: f64, p1: f64) -> Complex64 {
    Complex64::new(1.0, 0.0) - (rotor(p1) * phi_f).exp()
}

/// Interior sides expressed relative to `phi_{n-1}`.
pub fn ell_m2_bar(s: &SwitchingStructure, p1: f64) -> Complex64 {
    let interior = &coefficients(s.n_el)[1..s.n() - 1];
    -interior
        .iter()
        .zip(&s.delta_phi)
        .map(|(&a, &d)| a * (-rotor(p1) * d).exp())
        .sum::<Complex64>()
}

/// `phi_{n-1}` that aligns `ell_m2` with `ell_m1`, taken as the largest
/// such angle not beyond `phi_f`.
pub fn match_angle(phi_f: f64, s: &SwitchingStructure, p1: f64) -> Result<f64> {
    let lhs = ell_m1(phi_f, p1);
    let rhs = ell_m2_bar(s, p1);
    for side in [lhs, rhs] {
        if side.norm() < MIN_SIDE {
            return Err(Error::DegenerateVector(side.norm()));
        }
    }
    Ok(wrap_below(lhs.arg() - rhs.arg(), phi_f))
}

/// Largest `psi + 2 pi m` that does not exceed `limit`.
pub fn wrap_below(psi: f64, limit: f64) -> f64 {
    psi + TAU * ((limit - psi) / TAU).floor()
}

/// Closure residual `|sum a*_i e^{(p1 + j) phi_i}|`.
pub fn closure_residual(coeffs: &[f64], angles: &[f64], p1: f64) -> f64 {
    coeffs
        .iter()
        .zip(angles)
        .map(|(&a, &phi)| a * (rotor(p1) * phi).exp())
        .sum::<Complex64>()
        .norm()
}

/// One evaluation of the squared-length mismatch.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthError {
    pub phi_f: f64,
    pub value: f64,
    pub structure: SwitchingStructure,
    /// Matched `phi_{n-1}`; `None` when there is no negative section.
    pub phi_last: Option<f64>,
}

/// Where switching structures come from during a line search.
#[derive(Debug, Clone)]
enum StructureSource {
    Exact(Option<usize>),
    Table(StructureTable),
}

/// The line-search problem for one `(a_max, j_max)` pair on one plant.
#[derive(Debug, Clone)]
pub struct SegmentProblem {
    pub a_max: f64,
    pub j_max: f64,
    pub dp: DerivedParams,
    /// Normalized terminal acceleration `a_max omega_d / j_max`.
    pub a_star: f64,
    source: StructureSource,
}

impl SegmentProblem {
    pub fn new(sys: &SystemParams, a_max: f64, j_max: f64, settings: &PlannerSettings) -> Result<Self> {
        let dp = sys.derive()?;
        for (name, value) in [("a_max", a_max), ("j_max", j_max)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveParameter { name, value });
            }
        }
        let a_star = a_max * dp.omega_d / j_max;
        let source = if settings.precompute {
            StructureSource::Table(StructureTable::build(a_star, dp.p1, settings.max_sections))
        } else {
            StructureSource::Exact(settings.max_sections)
        };
        Ok(Self { a_max, j_max, dp, a_star, source })
    }

    pub fn structure(&self, phi_f: f64) -> Result<SwitchingStructure> {
        match &self.source {
            StructureSource::Exact(cap) => solve_structure_limited(phi_f, self.a_star, self.dp.p1, *cap),
            StructureSource::Table(table) => table.lookup(phi_f),
        }
    }

    /// `|ell_m1|^2 - |e^{(p1 + j) psi} ell_m2_bar|^2` at `phi_f`.
    pub fn length_error(&self, phi_f: f64) -> Result<LengthError> {
        let p1 = self.dp.p1;
        let structure = self.structure(phi_f)?;
        let lhs = ell_m1(phi_f, p1).norm_sqr();
        if structure.delta_phi_abs == 0.0 {
            return Ok(LengthError { phi_f, value: lhs, structure, phi_last: None });
        }
        let psi = match_angle(phi_f, &structure, p1)?;
        let rhs = (2.0 * p1 * psi).exp() * ell_m2_bar(&structure, p1).norm_sqr();
        Ok(LengthError { phi_f, value: lhs - rhs, structure, phi_last: Some(psi) })
    }
}

/// Plans a segment with default settings and `n_iter` line-search steps.
pub fn plan_segment(sys: &SystemParams, a_max: f64, j_max: f64, n_iter: usize) -> Result<JerkSegment> {
    plan_segment_with(sys, a_max, j_max, &PlannerSettings::default().with_iterations(n_iter))
}

/// Bisection on `phi_f` over `[a*, a* + pi)` driven by the sign of the
/// length error, with exactly `settings.n_iter` evaluations.
///
/// The error equals `|ell_m1(a*)|^2 >= 0` at the lower end, so a negative
/// value always means the root lies to the left.
pub fn plan_segment_with(
    sys: &SystemParams,
    a_max: f64,
    j_max: f64,
    settings: &PlannerSettings,
) -> Result<JerkSegment> {
    let problem = SegmentProblem::new(sys, a_max, j_max, settings)?;
    let search = line_search(&problem, settings)?;
    if !search.bracketed {
        return Err(Error::PlanningFailed(format!(
            "length error stays non-negative on [{}, {} + pi)",
            problem.a_star, problem.a_star
        )));
    }
    assemble(&problem, search.last, search.trace, settings)
}

/// Outcome of the bounded line search.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSearch {
    /// Candidate evaluated at each iteration.
    pub trace: Vec<f64>,
    /// Evaluation at the final candidate.
    pub last: LengthError,
    /// Whether a negative length error was met, i.e. the root was bracketed.
    pub bracketed: bool,
}

/// Runs exactly `settings.n_iter` evaluations of the length error, halving
/// the step each time and moving towards smaller `phi_f` after a negative
/// value.
pub fn line_search(problem: &SegmentProblem, settings: &PlannerSettings) -> Result<LineSearch> {
    if settings.n_iter == 0 {
        return Err(Error::InvalidInput("n_iter must be at least 1".into()));
    }
    let failed = |e: Error| Error::PlanningFailed(e.to_string());
    let mut trace = Vec::with_capacity(settings.n_iter);
    let mut last = None;
    let mut bracketed = false;
    let mut visit = |phi: f64, trace: &mut Vec<f64>| -> Result<bool> {
        trace.push(phi);
        let eval = problem.length_error(phi).map_err(failed)?;
        let negative = eval.value < 0.0;
        bracketed |= negative;
        last = Some(eval);
        Ok(negative)
    };
    match settings.precision {
        Precision::Double => {
            let span = PI;
            let mut phi = problem.a_star + 0.5 * span;
            for i in 1..=settings.n_iter {
                let step = span * 0.5f64.powi(i as i32 + 1);
                phi = if visit(phi, &mut trace)? { phi - step } else { phi + step };
            }
        }
        Precision::Single => {
            let span = PI as f32;
            let mut phi = problem.a_star as f32 + 0.5 * span;
            for i in 1..=settings.n_iter {
                let step = span * 0.5f32.powi(i as i32 + 1);
                phi = if visit(phi as f64, &mut trace)? { phi - step } else { phi + step };
            }
        }
    }
    Ok(LineSearch { trace, last: last.expect("at least one iteration"), bracketed })
}

fn assemble(
    problem: &SegmentProblem,
    eval: LengthError,
    trace: Vec<f64>,
    settings: &PlannerSettings,
) -> Result<JerkSegment> {
    let dp = &problem.dp;
    let LengthError { phi_f, structure, phi_last, .. } = eval;
    let phi_last = phi_last.ok_or_else(|| {
        Error::PlanningFailed("line search ended on a segment without negative section".into())
    })?;
    let mut angles = Vec::with_capacity(structure.n());
    angles.push(0.0);
    angles.extend(structure.delta_phi.iter().map(|d| phi_last - d));
    angles.push(phi_f);
    if angles[1] < 0.0 {
        return Err(Error::PlanningFailed(format!(
            "first switch lands before t = 0 (phi_2 = {:.3e})",
            angles[1]
        )));
    }
    let coeffs = coefficients(structure.n_el);
    let closure = closure_residual(&coeffs, &angles, dp.p1);
    if !(closure < settings.closure_tol) {
        return Err(Error::PlanningFailed(format!(
            "polygon does not close: residual {closure:.3e} at phi_f = {phi_f}"
        )));
    }
    let times: Vec<f64> = angles.iter().map(|phi| phi / dp.omega_d).collect();
    let mut seg = JerkSegment {
        a_max: problem.a_max,
        j_max: problem.j_max,
        t_f: phi_f / dp.omega_d,
        phi_f,
        times,
        coeffs,
        structure,
        overshoot: OvershootReport { max_accel: 0.0, exceeds: false, argmax_t: 0.0 },
        trace,
        closure,
    };
    seg.overshoot = detect_overshoot(&seg);
    Ok(seg)
}

/// Maximum slider acceleration over the segment. The acceleration is
/// piecewise linear, so its extrema sit on switch instants.
pub fn detect_overshoot(seg: &JerkSegment) -> OvershootReport {
    let profile = seg.profile();
    let mut best = (f64::NEG_INFINITY, 0.0);
    for &t in std::iter::once(&0.0).chain(&seg.times) {
        let acc = slider_response(&profile, t).z_ddot;
        if acc > best.0 {
            best = (acc, t);
        }
    }
    OvershootReport {
        max_accel: best.0,
        exceeds: best.0 > seg.a_max * (1.0 + OVERSHOOT_REL_TOL),
        argmax_t: best.1,
    }
}

/// Terminal residuals of a profile that should end at acceleration `a_max`
/// with the base at rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminalResiduals {
    /// `|x(t_f) + a_max m_s / k|` (m).
    pub x: f64,
    /// `|x_dot(t_f)|` (m/s).
    pub x_dot: f64,
    /// `|z_ddot(t_f) - a_max|` (m/s^2).
    pub z_ddot: f64,
}

impl TerminalResiduals {
    pub fn max(&self) -> f64 {
        self.x.max(self.x_dot).max(self.z_ddot)
    }

    pub fn within(&self, tol: f64) -> bool {
        self.x < tol && self.x_dot < tol && self.z_ddot < tol
    }
}

pub fn terminal_residuals(profile: &JerkProfile, a_max: f64, t_f: f64, dp: &DerivedParams) -> TerminalResiduals {
    let base = base_response(profile, t_f, dp);
    let slider = slider_response(profile, t_f);
    TerminalResiduals {
        x: (base.x - dp.static_deflection(a_max)).abs(),
        x_dot: base.x_dot.abs(),
        z_ddot: (slider.z_ddot - a_max).abs(),
    }
}

/// Offset and shift under which the switch times are zeros of the
/// switching function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchingCheck {
    pub c1: f64,
    /// Angle added to `omega_d t` to land on the switching function's axis.
    pub shift: f64,
    /// Largest `|lambda|` over the interior switch angles.
    pub max_residual: f64,
    /// Jerk is `-j_max` exactly where `lambda > 0` between switches.
    pub signs_match: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub terminal: TerminalResiduals,
    pub terminal_ok: bool,
    pub closed: bool,
    pub switching: Option<SwitchingCheck>,
    pub switching_ok: bool,
    pub jerk_bound_ok: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.terminal_ok && self.closed && self.switching_ok && self.jerk_bound_ok
    }
}

/// Re-derives the optimality certificate of a segment from its switch
/// times alone: terminal conditions from the closed-form responses, the
/// switching law, and the jerk bound.
pub fn verify_segment(seg: &JerkSegment, sys: &SystemParams) -> Result<VerificationReport> {
    verify_segment_with(seg, sys, TERMINAL_TOL, CLOSURE_TOL)
}

pub fn verify_segment_with(
    seg: &JerkSegment,
    sys: &SystemParams,
    terminal_tol: f64,
    switching_tol: f64,
) -> Result<VerificationReport> {
    let dp = sys.derive()?;
    let profile = JerkProfile::from_pairs(seg.times.iter().zip(&seg.coeffs).map(|(&t, &c)| (t, c * seg.j_max)))?;
    let terminal = terminal_residuals(&profile, seg.a_max, seg.t_f, &dp);
    let closed = profile.is_closed(1e-12 * seg.j_max);
    let switching = switching_check(seg, &profile, &dp);
    let switching_ok = switching.is_some_and(|c| c.max_residual < switching_tol && c.signs_match);
    Ok(VerificationReport {
        terminal,
        terminal_ok: terminal.within(terminal_tol),
        closed,
        switching,
        switching_ok,
        jerk_bound_ok: profile.respects_jerk_limit(seg.j_max, 1e-12),
    })
}

fn switching_check(seg: &JerkSegment, profile: &JerkProfile, dp: &DerivedParams) -> Option<SwitchingCheck> {
    let n = seg.times.len();
    if n < 4 {
        return None;
    }
    let p1 = dp.p1;
    let angles: Vec<f64> = seg.times.iter().map(|t| t * dp.omega_d).collect();
    let (a, b) = (angles[n - 3], angles[n - 2]);
    let level = |phi: f64| (p1 * phi).exp() * phi.sin();
    // Shift that puts both ends of the last negative section on one level:
    // r sin(a + s) = sin(b + s) with r = e^{p1 (a - b)}.
    let mut shift = if b > a {
        let r = (p1 * (a - b)).exp();
        (r * a.sin() - b.sin()).atan2(b.cos() - r * a.cos())
    } else {
        crate::switching::maximum_angle(p1, 0) - a
    };
    if level(0.5 * (a + b) + shift) < 0.0 {
        shift += PI;
    }
    let c1 = level(a + shift);
    if !(c1 > 0.0) {
        return None;
    }
    let max_residual = angles[1..n - 1]
        .iter()
        .map(|phi| switching_fn(phi + shift, c1, p1).abs())
        .fold(0.0, f64::max);
    let signs_match = angles.windows(2).all(|w| {
        if w[1] <= w[0] {
            return true;
        }
        let mid = 0.5 * (w[0] + w[1]);
        let jerk = profile.jerk_at(mid / dp.omega_d);
        let lambda = switching_fn(mid + shift, c1, p1);
        (jerk < 0.0) == (lambda > 0.0)
    });
    Some(SwitchingCheck { c1, shift, max_residual, signs_match })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn table1_segment(a_max: f64) -> JerkSegment {
        plan_segment(&SystemParams::table1(), a_max, 800.0, DEFAULT_N_ITER).unwrap()
    }

    #[test]
    fn coefficient_pattern() {
        assert_eq!(coefficients(1), vec![1.0, -2.0, 2.0, -1.0]);
        assert_eq!(coefficients(2), vec![1.0, -2.0, 2.0, -2.0, 2.0, -1.0]);
        assert_eq!(coefficients(3).iter().sum::<f64>(), 0.0);
    }

    #[test]
    fn ell_m1_values() {
        assert_abs_diff_eq!(ell_m1(TAU, 0.0).norm(), 0.0, epsilon = 1e-15);
        let v = ell_m1(PI, 0.0);
        assert_abs_diff_eq!(v.re, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn ell_m2_bar_values() {
        let s = |d2: f64| SwitchingStructure {
            n_el: 1,
            c1: 0.5,
            delta_phi: vec![d2, 0.0],
            delta_phi_abs: d2,
            anchor: 0.0,
        };
        assert_eq!(ell_m2_bar(&s(0.0), 0.3).norm(), 0.0);
        let v = ell_m2_bar(&s(PI), 0.0);
        assert_abs_diff_eq!(v.re, -4.0, epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn wrap_below_floor() {
        assert_eq!(wrap_below(3.0, 3.0), 3.0);
        assert_abs_diff_eq!(wrap_below(3.1, 3.0), 3.1 - TAU, epsilon = 1e-15);
        assert_abs_diff_eq!(wrap_below(3.0 - 20.0, 3.0), 3.0 - 20.0 + 3.0 * TAU, epsilon = 1e-14);
    }

    #[test]
    fn match_angle_rejects_degenerate() {
        let s = SwitchingStructure { n_el: 1, c1: 1.0, delta_phi: vec![0.0, 0.0], delta_phi_abs: 0.0, anchor: 0.0 };
        assert!(matches!(match_angle(1.0, &s, 0.01), Err(Error::DegenerateVector(_))));
    }

    #[test]
    fn table1_segment_shape() {
        let seg = table1_segment(20.0);
        let dp = SystemParams::table1().derive().unwrap();
        assert_eq!(seg.n(), 4);
        assert!(seg.t_f >= 0.025 && seg.t_f < 0.025 + PI / dp.omega_d);
        assert!(seg.closure < CLOSURE_TOL);
        assert_eq!(seg.trace.len(), DEFAULT_N_ITER);
        // j t_f - 2 j dt_abs = a_max
        assert_abs_diff_eq!(800.0 * seg.t_f - 1600.0 * seg.delta_t_abs(), 20.0, epsilon = 1e-9);
        // |ell_m1| equals |ell_m2| at the solution.
        let psi = seg.times[seg.n() - 2] * dp.omega_d;
        let lhs = ell_m1(seg.phi_f, dp.p1).norm();
        let rhs = (dp.p1 * psi).exp() * ell_m2_bar(&seg.structure, dp.p1).norm();
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-9);
    }

    #[test]
    fn segment_verifies() {
        let seg = table1_segment(20.0);
        let report = verify_segment(&seg, &SystemParams::table1()).unwrap();
        assert!(report.passed(), "{report:?}");
        // +j, -j, +j between the switches
        let p = seg.profile();
        let t = &seg.times;
        assert_eq!(p.jerk_at(0.5 * t[1]), 800.0);
        assert_eq!(p.jerk_at(0.5 * (t[1] + t[2])), -800.0);
        assert_eq!(p.jerk_at(0.5 * (t[2] + t[3])), 800.0);
    }

    #[test]
    fn broken_segment_fails_terminal_check() {
        let mut seg = table1_segment(20.0);
        seg.coeffs[2] = 1.5;
        let report = verify_segment(&seg, &SystemParams::table1()).unwrap();
        assert!(!report.closed);
        assert!(!report.terminal_ok);
        assert!(!report.passed());
    }

    #[test]
    fn no_overshoot_at_twice_the_limit() {
        let seg = table1_segment(40.0);
        assert!(!seg.overshoot.exceeds, "{:?}", seg.overshoot);
        assert!(seg.overshoot.max_accel >= 40.0 - 1e-9);
    }

    #[test]
    fn deterministic() {
        let a = table1_segment(13.0);
        let b = table1_segment(13.0);
        assert_eq!(a, b);
    }

    #[test]
    fn precomputed_table_agrees() {
        let sys = SystemParams::table1();
        let exact = table1_segment(20.0);
        let settings = PlannerSettings { precompute: true, ..Default::default() };
        let tabled = plan_segment_with(&sys, 20.0, 800.0, &settings).unwrap();
        assert_abs_diff_eq!(exact.t_f, tabled.t_f, epsilon = 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let sys = SystemParams::table1();
        assert!(plan_segment(&sys, 0.0, 800.0, 10).is_err());
        assert!(plan_segment(&sys, 20.0, -1.0, 10).is_err());
        assert!(plan_segment(&sys, 20.0, 800.0, 0).is_err());
    }
}
