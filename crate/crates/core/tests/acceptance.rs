//! End-to-end acceptance checks. Prints one line per criterion and exits
//! non-zero if any of them fails.

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use jerkseg::analysis::{
    critical_damping, fit_residual, time_advantage, zv_duration, zv_segment, ResidualFit,
};
use jerkseg::cli::{run, Cli};
use jerkseg::model::{base_response, sample_trajectory, JerkProfile, SystemParams};
use jerkseg::planner::{
    line_search, plan_segment, plan_segment_with, terminal_residuals, verify_segment, JerkSegment, PlannerSettings, SegmentProblem,
};
use jerkseg::verify::{brute_force_n4, rk4_integrate};

const J_MAX: f64 = 800.0;
const N_ITER: usize = 48;
const TERMINAL_ACCELS: [f64; 5] = [1.0, 5.0, 10.0, 20.0, 40.0];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn table1() -> SystemParams {
    SystemParams::table1()
}

fn plan(sys: &SystemParams, a_max: f64) -> JerkSegment {
    plan_segment(sys, a_max, J_MAX, N_ITER).expect("planning succeeds")
}

fn within_time(elapsed: Duration, limit: Duration, detail: &mut String) -> bool {
    detail.push_str(&format!(", {:.1} ms (limit {} ms)", elapsed.as_secs_f64() * 1e3, limit.as_millis()));
    elapsed < limit
}

fn eigenfrequencies() -> Outcome {
    let start = Instant::now();
    let t1 = table1().derive().unwrap();
    let lab = SystemParams::lab().derive().unwrap();
    let elapsed = start.elapsed();
    let checks = [
        ("table1 f0", t1.f0(), 26.9),
        ("table1 fd", t1.fd(), 26.8914),
        ("lab f0", lab.f0(), 9.711),
        ("lab fd", lab.fd(), 9.71),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, got, want) in checks {
        let ok = (got - want).abs() < 1e-3;
        pass &= ok;
        parts.push(format!("{name} = {got:.5} Hz (want {want}){}", if ok { "" } else { " OUT" }));
    }
    let mut detail = parts.join("; ");
    pass &= within_time(elapsed, Duration::from_millis(1), &mut detail);
    Outcome::new(pass, detail)
}

fn terminal_conditions() -> Outcome {
    let sys = table1();
    let dp = sys.derive().unwrap();
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut worst_rk4: f64 = 0.0;
    for a in TERMINAL_ACCELS {
        let seg = plan(&sys, a);
        let r = terminal_residuals(&seg.profile(), a, seg.t_f, &dp);
        worst = worst.max(r.max());
        let rk = rk4_integrate(&sys, &seg.profile(), 1e-5, seg.t_f).unwrap();
        let (_, end) = rk.last().unwrap();
        let exact = base_response(&seg.profile(), seg.t_f, &dp);
        let scale = dp.static_deflection(a).abs();
        let rel = (end.x - exact.x).abs().max((end.x_dot - exact.x_dot).abs() * seg.t_f) / scale;
        let rel = rel.max((end.z_ddot - a).abs() / a);
        worst_rk4 = worst_rk4.max(rel);
    }
    let elapsed = start.elapsed();
    let mut detail = format!("max closed-form residual {worst:.2e} (< 1e-9), RK4 relative deviation {worst_rk4:.2e} (< 1e-6)");
    let pass = worst < 1e-9 && worst_rk4 < 1e-6;
    let pass = within_time(elapsed, Duration::from_secs(1), &mut detail) && pass;
    Outcome::new(pass, detail)
}

fn theorem_bounds() -> Outcome {
    let sys = table1();
    let dp = sys.derive().unwrap();
    let mut pass = true;
    let mut violations = Vec::new();
    for i in 0..80 {
        let a = 0.5 * (i + 1) as f64;
        let seg = plan(&sys, a);
        let lo = a / J_MAX;
        let hi = lo + PI / dp.omega_d;
        let bound = 2 * (a * dp.omega_d / (TAU * J_MAX)).ceil() as usize;
        if !(seg.t_f >= lo && seg.t_f < hi) || seg.n() - 2 > bound {
            pass = false;
            violations.push(format!("a={a}"));
        }
    }
    let seg = plan(&sys, 20.0);
    let bound = 2 * (20.0 * dp.omega_d / (TAU * J_MAX)).ceil() as usize + 2;
    pass &= bound == 4 && seg.n() == 4;
    Outcome::new(
        pass,
        format!(
            "80 accelerations in [0.5, 40]: {} violations; a=20 bound n <= {bound}, planned n = {}",
            violations.len(),
            seg.n()
        ),
    )
}

fn zv_baseline() -> Outcome {
    let sys = table1();
    let dp = sys.derive().unwrap();
    let start = Instant::now();
    let mut worst_t: f64 = 0.0;
    let mut worst_res: f64 = 0.0;
    let mut ordered = true;
    for a in TERMINAL_ACCELS {
        let zv = zv_segment(&dp, a, J_MAX).unwrap();
        let t_hat = zv_duration(&dp, a, J_MAX);
        let expected = a / J_MAX + PI / dp.omega_d;
        worst_t = worst_t.max((zv.last_time() - expected).abs() / expected);
        worst_res = worst_res.max(terminal_residuals(&zv, a, t_hat, &dp).max());
        ordered &= plan(&sys, a).t_f < t_hat;
    }
    let elapsed = start.elapsed();
    let mut detail = format!(
        "t_hat relative error {worst_t:.1e} (< 1e-12), terminal residual {worst_res:.2e} (< 1e-9), planner faster: {ordered}"
    );
    let pass = worst_t < 1e-12 && worst_res < 1e-9 && ordered;
    let pass = within_time(elapsed, Duration::from_secs(1), &mut detail) && pass;
    Outcome::new(pass, detail)
}

fn desk_optimality() -> Outcome {
    let sys = table1();
    let grid = 2e-5;
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for a in [10.0, 20.0] {
        let seg = plan(&sys, a);
        match brute_force_n4(&sys, a, J_MAX, grid) {
            Ok(bf) => {
                let ok = bf.t_f >= seg.t_f - grid;
                pass &= ok;
                parts.push(format!("a={a}: grid {:.5} ms vs planner {:.5} ms", bf.t_f * 1e3, seg.t_f * 1e3));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("a={a}: {e}"));
            }
        }
    }
    let mut detail = parts.join("; ");
    let pass = within_time(start.elapsed(), Duration::from_secs(120), &mut detail) && pass;
    Outcome::new(pass, detail)
}

fn planned_cases() -> Vec<(SystemParams, f64)> {
    let base = table1();
    let mut cases = Vec::new();
    for frac in [1.0, 0.1, 0.05, 0.0] {
        let sys = base.with_damping(base.d * frac);
        for i in 0..24 {
            cases.push((sys, 2.5 * (i + 1) as f64));
        }
    }
    for a in [1.0, 3.0, 6.0, 12.0] {
        cases.push((SystemParams::lab(), a));
    }
    cases
}

fn switching_law() -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let cases = planned_cases();
    for (sys, a) in &cases {
        let seg = plan(sys, *a);
        let report = verify_segment(&seg, sys).unwrap();
        match report.switching {
            Some(c) if c.c1 > 0.0 && c.max_residual < 1e-8 && c.signs_match => worst = worst.max(c.max_residual),
            _ => failures.push(format!("d={} a={a}", sys.d)),
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{} segments, max |lambda| {worst:.2e} (< 1e-8), failures: {:?}", cases.len(), failures),
    )
}

fn zero_damping_symmetry() -> Outcome {
    let sys = table1().with_damping(0.0);
    let dp = sys.derive().unwrap();
    let seg = plan(&sys, 35.0);
    if seg.n_el() != 2 {
        return Outcome::new(false, format!("expected two negative sections, got {}", seg.n_el()));
    }
    let phi: Vec<f64> = seg.times.iter().map(|t| t * dp.omega_d).collect();
    let widths = [phi[2] - phi[1], phi[4] - phi[3]];
    let width_gap = (widths[0] - widths[1]).abs();
    let share = (widths[0] - seg.structure.delta_phi_abs / 2.0).abs();
    let period_gap = ((phi[3] - phi[1]) - TAU).abs().max(((phi[4] - phi[2]) - TAU).abs());
    let pass = width_gap < 1e-12 && share < 1e-12 && period_gap < 1e-12;
    Outcome::new(
        pass,
        format!(
            "a=35: widths {:.6} / {:.6} rad (gap {width_gap:.1e}), half of total off by {share:.1e}, sections 2 pi apart within {period_gap:.1e}",
            widths[0], widths[1]
        ),
    )
}

fn critical_damping_regime() -> Outcome {
    let sys = table1();
    let mut max_sections = 0;
    for i in 0..=78 {
        let a = 1.0 + 0.5 * i as f64;
        max_sections = max_sections.max(plan(&sys, a).n_el());
    }
    let mut pass = max_sections == 1;
    let mut parts = vec![format!("table1 max sections over [1, 40]: {max_sections}")];
    for a in [32.0, 36.0, 40.0] {
        match critical_damping(&sys, a, J_MAX) {
            Ok(d) => {
                let below = plan(&sys.with_damping(d * (1.0 - 1e-4)), a).n_el();
                let above = plan(&sys.with_damping(d * (1.0 + 1e-4)), a).n_el();
                let ok = below >= 2 && above == 1 && d < sys.d;
                pass &= ok;
                parts.push(format!("a={a}: d_crit {d:.1} (sections {below} -> {above})"));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("a={a}: {e}"));
            }
        }
    }
    Outcome::new(pass, parts.join("; "))
}

fn single_section_advantage() -> Outcome {
    let a_values: Vec<f64> = (0..=78).map(|i| 1.0 + 0.5 * i as f64).collect();
    let rows = time_advantage(&table1(), &a_values, &[0.0], J_MAX).unwrap();
    let worst = rows.iter().max_by(|a, b| a.rel.total_cmp(&b.rel)).unwrap();
    let never_faster = rows.iter().all(|r| r.abs >= -1e-12);
    Outcome::new(
        worst.rel <= 5e-3 && never_faster,
        format!(
            "d=0, a in [1, 40]: largest relative advantage {:.3}% at a={} (limit 0.5%), single section never faster: {never_faster}",
            worst.rel * 100.0,
            worst.a_max
        ),
    )
}

fn plan_output(args: &[&str]) -> (i32, Vec<u8>) {
    let cli = Cli::try_parse_from(args).unwrap();
    let mut out = Vec::new();
    let code = run(cli, &mut std::io::empty(), &mut out, &mut std::io::sink());
    (code, out)
}

fn determinism() -> Outcome {
    let args = ["jerkseg", "plan", "--config", "table1", "--a-max", "20"];
    let (c1, first) = plan_output(&args);
    let (c2, second) = plan_output(&args);
    let identical = c1 == 0 && c2 == 0 && first == second;
    let sys = table1();
    let counts_ok = [1, 7, 18, 48, 64].iter().all(|&n| {
        let settings = PlannerSettings::default().with_iterations(n);
        let problem = SegmentProblem::new(&sys, 20.0, J_MAX, &settings).unwrap();
        let searched = line_search(&problem, &settings).is_ok_and(|s| s.trace.len() == n);
        let planned = n < 30 || plan_segment_with(&sys, 20.0, J_MAX, &settings).is_ok_and(|s| s.trace.len() == n);
        searched && planned
    });
    let mut settled = Vec::new();
    for (sys, a, j) in [(table1(), 20.0, J_MAX), (SystemParams::lab(), 6.0, 200.0)] {
        let settings = PlannerSettings::single_precision().with_iterations(40);
        let seg = plan_segment_with(&sys, a, j, &settings).unwrap();
        let last_change = (1..seg.trace.len()).rev().find(|&i| seg.trace[i] != seg.trace[i - 1]).map_or(1, |i| i + 1);
        settled.push(last_change);
    }
    let saturated = settled.iter().all(|&i| i <= 18);
    Outcome::new(
        identical && counts_ok && saturated,
        format!(
            "byte-identical plan output: {identical}; evaluations equal n_iter: {counts_ok}; \
             single-precision phi_f,try last changes at iteration {settled:?} (must be <= 18)"
        ),
    )
}

fn residual_fit() -> Outcome {
    let truth = ResidualFit { a0: 1.5e-5, delta: 4.2, omega_d: 170.0, phi0: -1.1, offset: 0.0, rms: 0.0, iterations: 0 };
    let samples: Vec<(f64, f64)> = (0..600).map(|i| {
        let t = 0.05 + i as f64 * 1e-4;
        (t, truth.eval(t - 0.05))
    }).collect();
    let fit = fit_residual(&samples, 0.05, Some((4.7619, 168.96))).unwrap();
    let rel = [
        (fit.a0 - truth.a0) / truth.a0,
        (fit.delta - truth.delta) / truth.delta,
        (fit.omega_d - truth.omega_d) / truth.omega_d,
        (fit.phi0 - truth.phi0) / truth.phi0,
    ]
    .iter()
    .fold(0.0f64, |m, r| m.max(r.abs()));

    let sys = table1();
    let dp = sys.derive().unwrap();
    let seg = plan(&sys, 20.0);
    let traj = rk4_integrate(&sys, &seg.profile(), 1e-4, seg.t_f + 0.1).unwrap();
    let tail: Vec<(f64, f64)> = traj.t.iter().zip(&traj.rows).map(|(&t, r)| (t, r.x)).collect();
    let tail_fit = fit_residual(&tail, seg.t_f, Some((dp.delta, dp.omega_d))).unwrap();
    Outcome::new(
        rel < 1e-6 && tail_fit.a0 < 1e-9,
        format!("synthetic max relative error {rel:.1e} (< 1e-6); planned tail a0 = {:.1e} m (< 1e-9)", tail_fit.a0),
    )
}

fn oracle_convergence() -> Outcome {
    let sys = table1();
    let dp = sys.derive().unwrap();
    let seg = plan(&sys, 20.0);
    let profile: JerkProfile = seg.profile();
    let t_end = seg.t_f + 0.02;
    let errors: Vec<f64> = [1e-4, 5e-5, 2.5e-5]
        .iter()
        .map(|&dt| {
            let rk = rk4_integrate(&sys, &profile, dt, t_end).unwrap();
            let exact = sample_trajectory(&profile, dt, t_end, &dp).unwrap();
            rk.rows
                .iter()
                .zip(&exact.rows)
                .map(|(a, b)| (a.x - b.x).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    let ratios = [errors[0] / errors[1], errors[1] / errors[2]];
    let pass = ratios.iter().all(|r| (12.0..=20.0).contains(r));
    Outcome::new(
        pass,
        format!("max |x| errors {:.2e}, {:.2e}, {:.2e}; ratios {:.2}, {:.2} (within [12, 20])", errors[0], errors[1], errors[2], ratios[0], ratios[1]),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("eigenfrequencies", eigenfrequencies),
        ("terminal conditions", terminal_conditions),
        ("terminal-time and switch-count bounds", theorem_bounds),
        ("zero-vibration baseline", zv_baseline),
        ("desk-scale optimality", desk_optimality),
        ("switching-law consistency", switching_law),
        ("zero-damping symmetry", zero_damping_symmetry),
        ("critical damping", critical_damping_regime),
        ("single-section time advantage", single_section_advantage),
        ("determinism", determinism),
        ("residual fit", residual_fit),
        ("oracle convergence", oracle_convergence),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name}: {}", i + 1, outcome.detail);
        failed += usize::from(!outcome.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
