//! Command-line front end: configuration files and the subcommands.
//!
//! Every command writes to a caller-supplied stream, so the binary stays a
//! thin wrapper and the commands can be exercised in-process.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::analysis::{
    acceleration_grid, critical_damping_with, fit_residual, method_segment, sweep, Method, SWEEP_POINTS,
};
use crate::error::Error;
use crate::model::{
    sample_trajectory, JerkProfile, KinematicLimits, SampledTrajectory, SystemParams, DEFAULT_DT,
};
use crate::planner::{
    plan_segment_with, verify_segment_with, PlannerSettings, Precision, SINGLE_PRECISION_CLOSURE_TOL,
};
use crate::verify::rk4_integrate;

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_PLANNING: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

const TABLE1_PRESET: &str = include_str!("../presets/table1.cfg");
const LAB_PRESET: &str = include_str!("../presets/lab.cfg");

/// Error with the process exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        Self { code: EXIT_VALIDATION, message: message.into() }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonPositiveParameter { .. }
            | Error::NotUnderdamped { .. }
            | Error::InvalidProfile(_)
            | Error::InvalidInput(_) => EXIT_VALIDATION,
            Error::NoZero { .. }
            | Error::NotBracketed { .. }
            | Error::OutOfRange { .. }
            | Error::DegenerateVector(_)
            | Error::PlanningFailed(_)
            | Error::NeverMultiple { .. }
            | Error::NoFeasible => EXIT_PLANNING,
            Error::GridTooLarge { .. } | Error::FitDiverged { .. } => EXIT_NUMERICAL,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::validation(format!("i/o error: {e}"))
    }
}

pub type CliResult<T = ()> = std::result::Result<T, CliError>;

/// Fixed formatting with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_list(values: impl IntoIterator<Item = f64>) -> String {
    let items: Vec<String> = values.into_iter().map(fmt_f64).collect();
    format!("[{}]", items.join(", "))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlannerConfig {
    pub n_iter: usize,
    pub closure_tol: f64,
    pub terminal_tol: f64,
    pub precompute: bool,
    pub single_precision: bool,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        let s = PlannerSettings::default();
        Self {
            n_iter: s.n_iter,
            closure_tol: s.closure_tol,
            terminal_tol: s.terminal_tol,
            precompute: false,
            single_precision: false,
        }
    }
}

/// Plant, limits and planner settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanConfig {
    pub plant: SystemParams,
    pub limits: KinematicLimits,
    pub planner: PlannerConfig,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlant {
    m_s: f64,
    m_b: f64,
    k: f64,
    d: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLimits {
    v_lim: f64,
    a_lim: f64,
    j_lim: f64,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawPlanner {
    n_iter: Option<usize>,
    closure_tol: Option<f64>,
    terminal_tol: Option<f64>,
    precompute: Option<bool>,
    single_precision: Option<bool>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    plant: RawPlant,
    limits: RawLimits,
    #[serde(default)]
    planner: RawPlanner,
}

impl PlanConfig {
    pub fn table1() -> Self {
        Self::parse(TABLE1_PRESET).expect("bundled preset is valid")
    }

    pub fn lab() -> Self {
        Self::parse(LAB_PRESET).expect("bundled preset is valid")
    }

    /// Parses a configuration document. A `plan` output is accepted too;
    /// its `[config]` table is used.
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut doc: toml::Table =
            toml::from_str(text).map_err(|e| CliError::validation(format!("malformed config: {e}")))?;
        if !doc.contains_key("plant") {
            if let Some(toml::Value::Table(inner)) = doc.remove("config") {
                doc = inner;
            }
        }
        let raw: RawConfig = toml::Value::Table(doc)
            .try_into()
            .map_err(|e| CliError::validation(format!("malformed config: {e}")))?;
        let invalid = |e: Error| CliError::validation(format!("invalid config: {e}"));
        let plant = SystemParams::new(raw.plant.m_s, raw.plant.m_b, raw.plant.k, raw.plant.d).map_err(invalid)?;
        let limits = KinematicLimits::new(raw.limits.v_lim, raw.limits.a_lim, raw.limits.j_lim).map_err(invalid)?;
        let single_precision = raw.planner.single_precision.unwrap_or(false);
        let defaults = PlannerConfig::default();
        let planner = PlannerConfig {
            n_iter: raw.planner.n_iter.unwrap_or(defaults.n_iter),
            closure_tol: raw.planner.closure_tol.unwrap_or(if single_precision {
                SINGLE_PRECISION_CLOSURE_TOL
            } else {
                defaults.closure_tol
            }),
            terminal_tol: raw.planner.terminal_tol.unwrap_or(defaults.terminal_tol),
            precompute: raw.planner.precompute.unwrap_or(false),
            single_precision,
        };
        if planner.n_iter == 0 {
            return Err(CliError::validation("invalid config: planner.n_iter must be at least 1"));
        }
        for (name, v) in [("planner.closure_tol", planner.closure_tol), ("planner.terminal_tol", planner.terminal_tol)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(CliError::validation(format!("invalid config: {name} must be positive, got {v}")));
            }
        }
        Ok(Self { plant, limits, planner })
    }

    /// Loads a preset by name (`table1`, `lab`) or a file path.
    pub fn load(source: &str) -> CliResult<Self> {
        match source {
            "table1" => Ok(Self::table1()),
            "lab" => Ok(Self::lab()),
            path => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::validation(format!("cannot read config `{path}`: {e}")))?;
                Self::parse(&text)
            }
        }
    }

    pub fn settings(&self) -> PlannerSettings {
        PlannerSettings {
            n_iter: self.planner.n_iter,
            precision: if self.planner.single_precision { Precision::Single } else { Precision::Double },
            precompute: self.planner.precompute,
            max_sections: None,
            closure_tol: self.planner.closure_tol,
            terminal_tol: self.planner.terminal_tol,
        }
    }

    /// TOML rendering; `prefix` nests the tables (e.g. `config.`).
    pub fn to_toml(&self, prefix: &str) -> String {
        let p = &self.plant;
        let l = &self.limits;
        let s = &self.planner;
        format!(
            "[{prefix}plant]\nm_s = {}\nm_b = {}\nk = {}\nd = {}\n\n\
             [{prefix}limits]\nv_lim = {}\na_lim = {}\nj_lim = {}\n\n\
             [{prefix}planner]\nn_iter = {}\nclosure_tol = {}\nterminal_tol = {}\nprecompute = {}\nsingle_precision = {}\n",
            fmt_f64(p.m_s),
            fmt_f64(p.m_b),
            fmt_f64(p.k),
            fmt_f64(p.d),
            fmt_f64(l.v_lim),
            fmt_f64(l.a_lim),
            fmt_f64(l.j_lim),
            s.n_iter,
            fmt_f64(s.closure_tol),
            fmt_f64(s.terminal_tol),
            s.precompute,
            s.single_precision,
        )
    }
}

#[derive(Debug, Parser)]
#[command(name = "jerkseg", version, about = "Time-optimal jerk segments for a slider on an elastic base")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plan one segment and print it with its verification report (TOML).
    Plan(PlanArgs),
    /// Tabulate the state along a segment or profile (CSV).
    Simulate(SimulateArgs),
    /// Terminal times per method over a range of accelerations (CSV).
    Sweep(SweepArgs),
    /// Fit a damped sinusoid to sampled base motion (TOML).
    Fit(FitArgs),
    /// Critical damping over a range of accelerations (CSV).
    CriticalDamping(CriticalDampingArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Config file, or preset `table1` / `lab`.
    #[arg(long, short, default_value = "table1")]
    pub config: String,
}

#[derive(Debug, Clone, Args)]
pub struct PlanArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Terminal acceleration (m/s^2); defaults to the config's a_lim.
    #[arg(long, allow_negative_numbers = true)]
    pub a_max: Option<f64>,
    /// Jerk bound (m/s^3); defaults to the config's j_lim.
    #[arg(long, allow_negative_numbers = true)]
    pub j_max: Option<f64>,
    /// Line-search iterations.
    #[arg(long)]
    pub iters: Option<usize>,
    /// Keep the line search in single precision.
    #[arg(long)]
    pub single_precision: bool,
    /// Interpolate switching structures from a precomputed table.
    #[arg(long)]
    pub precompute: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Profile generator.
    #[arg(long, default_value = "ocp", conflicts_with = "profile")]
    pub method: String,
    /// `plan` output (or any TOML with `[profile] times/amplitudes`); `-` reads stdin.
    #[arg(long)]
    pub profile: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub a_max: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub j_max: Option<f64>,
    /// Grid step (s).
    #[arg(long, default_value_t = DEFAULT_DT, allow_negative_numbers = true)]
    pub dt: f64,
    /// End time (s); defaults to the last switch plus 50 ms.
    #[arg(long, allow_negative_numbers = true)]
    pub t_end: Option<f64>,
    /// Integrate numerically instead of evaluating the closed forms.
    #[arg(long)]
    pub rk4: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RangeArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a_min: f64,
    #[arg(long = "a-max", allow_negative_numbers = true)]
    pub a_hi: f64,
    #[arg(long, default_value_t = SWEEP_POINTS)]
    pub points: usize,
    /// Geometric spacing.
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub range: RangeArgs,
    /// Comma-separated subset of ocp, zv, scurve.
    #[arg(long, default_value = "ocp,zv,scurve")]
    pub methods: String,
    #[arg(long, allow_negative_numbers = true)]
    pub j_max: Option<f64>,
    /// Worker threads; output order does not depend on it.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// Two-column `t, x` samples, or CSV with `t` and `x` headers; `-` reads stdin.
    #[arg(long, short, default_value = "-")]
    pub input: String,
    /// Start of the fitted window (s).
    #[arg(long, allow_negative_numbers = true)]
    pub t_start: f64,
    /// Seed the decay and frequency from this plant.
    #[arg(long, short)]
    pub config: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CriticalDampingArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub range: RangeArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub j_max: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

/// Runs a parsed command; returns the process exit code.
pub fn run(cli: Cli, input: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Plan(a) => cmd_plan(&a, out),
        Command::Simulate(a) => cmd_simulate(&a, input, out),
        Command::Sweep(a) => cmd_sweep(&a, out),
        Command::Fit(a) => cmd_fit(&a, input, out),
        Command::CriticalDamping(a) => cmd_critical_damping(&a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code
        }
    }
}

fn read_source(source: &str, input: &mut dyn Read) -> CliResult<String> {
    if source == "-" {
        let mut s = String::new();
        input.read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(Path::new(source))
            .map_err(|e| CliError::validation(format!("cannot read `{source}`: {e}")))
    }
}

pub fn cmd_plan(args: &PlanArgs, out: &mut dyn Write) -> CliResult {
    let mut cfg = PlanConfig::load(&args.config.config)?;
    if let Some(n) = args.iters {
        cfg.planner.n_iter = n;
    }
    if args.single_precision && !cfg.planner.single_precision {
        cfg.planner.single_precision = true;
        cfg.planner.closure_tol = cfg.planner.closure_tol.max(SINGLE_PRECISION_CLOSURE_TOL);
    }
    cfg.planner.precompute |= args.precompute;
    if cfg.planner.n_iter == 0 {
        return Err(CliError::validation("--iters must be at least 1"));
    }
    let a_max = args.a_max.unwrap_or(cfg.limits.a_lim);
    let j_max = args.j_max.unwrap_or(cfg.limits.j_lim);
    let seg = plan_segment_with(&cfg.plant, a_max, j_max, &cfg.settings())?;
    let report = verify_segment_with(&seg, &cfg.plant, cfg.planner.terminal_tol, cfg.planner.closure_tol)?;
    let profile = seg.profile();

    let mut doc = cfg.to_toml("config.");
    let _ = write!(
        doc,
        "\n[request]\na_max = {}\nj_max = {}\n\n\
         [segment]\nt_f = {}\nphi_f = {}\nn = {}\nn_el = {}\nc1 = {}\ndelta_phi_abs = {}\nclosure = {}\nevaluations = {}\n\n\
         [segment.overshoot]\nmax_accel = {}\nexceeds = {}\nargmax_t = {}\n\n\
         [profile]\ntimes = {}\ncoefficients = {}\nstep_times = {}\namplitudes = {}\n\n",
        fmt_f64(a_max),
        fmt_f64(j_max),
        fmt_f64(seg.t_f),
        fmt_f64(seg.phi_f),
        seg.n(),
        seg.n_el(),
        fmt_f64(seg.structure.c1),
        fmt_f64(seg.structure.delta_phi_abs),
        fmt_f64(seg.closure),
        seg.trace.len(),
        fmt_f64(seg.overshoot.max_accel),
        seg.overshoot.exceeds,
        fmt_f64(seg.overshoot.argmax_t),
        fmt_list(seg.times.iter().copied()),
        fmt_list(seg.coeffs.iter().copied()),
        fmt_list(profile.steps().iter().map(|s| s.t)),
        fmt_list(profile.steps().iter().map(|s| s.a)),
    );
    let t = report.terminal;
    let _ = write!(
        doc,
        "[verification]\nx_residual = {}\nx_dot_residual = {}\nz_ddot_residual = {}\nterminal_ok = {}\nclosed = {}\n",
        fmt_f64(t.x),
        fmt_f64(t.x_dot),
        fmt_f64(t.z_ddot),
        report.terminal_ok,
        report.closed,
    );
    if let Some(c) = report.switching {
        let _ = write!(
            doc,
            "switching_c1 = {}\nswitching_shift = {}\nswitching_residual = {}\nswitching_signs = {}\n",
            fmt_f64(c.c1),
            fmt_f64(c.shift),
            fmt_f64(c.max_residual),
            c.signs_match,
        );
    }
    let _ = write!(
        doc,
        "switching_ok = {}\njerk_bound_ok = {}\npassed = {}\n",
        report.switching_ok,
        report.jerk_bound_ok,
        report.passed(),
    );
    out.write_all(doc.as_bytes())?;
    Ok(())
}

#[derive(Deserialize)]
struct RawProfile {
    #[serde(alias = "step_times")]
    times: Vec<f64>,
    amplitudes: Vec<f64>,
}

#[derive(Deserialize)]
struct ProfileDoc {
    profile: RawProfile,
}

/// Reads `[profile]` with `step_times`/`times` and `amplitudes` arrays.
pub fn parse_profile(text: &str) -> CliResult<JerkProfile> {
    let mut doc: toml::Table =
        toml::from_str(text).map_err(|e| CliError::validation(format!("malformed profile: {e}")))?;
    // `plan` output carries both switch times and merged step times.
    if let Some(toml::Value::Table(p)) = doc.get_mut("profile") {
        if let Some(steps) = p.remove("step_times") {
            p.insert("times".into(), steps);
        }
    }
    let raw: ProfileDoc = toml::Value::Table(doc)
        .try_into()
        .map_err(|e| CliError::validation(format!("malformed profile: {e}")))?;
    if raw.profile.times.len() != raw.profile.amplitudes.len() {
        return Err(CliError::validation("profile times and amplitudes differ in length"));
    }
    Ok(JerkProfile::from_pairs(raw.profile.times.into_iter().zip(raw.profile.amplitudes))?)
}

pub fn write_trajectory_csv(traj: &SampledTrajectory, sys: &SystemParams, out: &mut dyn Write) -> CliResult {
    let dp = sys.derive()?;
    let mut w = std::io::BufWriter::new(out);
    w.write_all(b"t,jerk,z_ddot,z_dot,z,x,x_dot,x_ddot\n")?;
    for ((t, r), j) in traj.t.iter().zip(&traj.rows).zip(&traj.jerk) {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            fmt_f64(*t),
            fmt_f64(*j),
            fmt_f64(r.z_ddot),
            fmt_f64(r.z_dot),
            fmt_f64(r.z),
            fmt_f64(r.x),
            fmt_f64(r.x_dot),
            fmt_f64(r.x_ddot(&dp)),
        )?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_simulate(args: &SimulateArgs, input: &mut dyn Read, out: &mut dyn Write) -> CliResult {
    let cfg = PlanConfig::load(&args.config.config)?;
    let profile = match &args.profile {
        Some(src) => parse_profile(&read_source(src, input)?)?,
        None => {
            let method = Method::parse(&args.method)?;
            let a_max = args.a_max.unwrap_or(cfg.limits.a_lim);
            let j_max = args.j_max.unwrap_or(cfg.limits.j_lim);
            method_segment(&cfg.plant, method, a_max, j_max, &cfg.settings())?.0
        }
    };
    let t_end = args.t_end.unwrap_or(profile.last_time() + 0.05);
    let traj = if args.rk4 {
        rk4_integrate(&cfg.plant, &profile, args.dt, t_end)?
    } else {
        sample_trajectory(&profile, args.dt, t_end, &cfg.plant.derive()?)?
    };
    write_trajectory_csv(&traj, &cfg.plant, out)
}

fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    if jobs == 0 {
        return Err(CliError::validation("--jobs must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError { code: EXIT_NUMERICAL, message: e.to_string() })?;
    Ok(pool.install(f))
}

fn csv_field(s: &str) -> String {
    s.replace([',', '\n', '\r'], ";")
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> CliResult {
    let cfg = PlanConfig::load(&args.config.config)?;
    let methods = args
        .methods
        .split(',')
        .map(|m| Method::parse(m.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let r = &args.range;
    let a_values = acceleration_grid(r.a_min, r.a_hi, r.points, r.log)?;
    let j_max = args.j_max.unwrap_or(cfg.limits.j_lim);
    let settings = cfg.settings();
    let rows = with_jobs(args.jobs, || sweep(&cfg.plant, &a_values, &methods, j_max, &settings))?;
    let mut text = String::from("a_max,method,t_f,status\n");
    for row in rows {
        let t_f = row.t_f.map(fmt_f64).unwrap_or_default();
        let _ = writeln!(text, "{},{},{},{}", fmt_f64(row.a_max), row.method, t_f, csv_field(&row.status));
    }
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// Parses `t, x` samples. A header row naming `t` and `x` selects those
/// columns; otherwise the first two columns are used.
pub fn parse_samples(text: &str) -> CliResult<Vec<(f64, f64)>> {
    let mut cols = (0, 1);
    let mut samples = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|f| !f.is_empty()).collect();
        if samples.is_empty() && fields.iter().any(|f| f.parse::<f64>().is_err()) {
            let find = |name: &str| fields.iter().position(|f| *f == name);
            if let (Some(t), Some(x)) = (find("t"), find("x")) {
                cols = (t, x);
                continue;
            }
        }
        let get = |i: usize| -> CliResult<f64> {
            fields
                .get(i)
                .and_then(|f| f.parse().ok())
                .ok_or_else(|| CliError::validation(format!("line {}: expected numeric t and x", lineno + 1)))
        };
        samples.push((get(cols.0)?, get(cols.1)?));
    }
    Ok(samples)
}

pub fn cmd_fit(args: &FitArgs, input: &mut dyn Read, out: &mut dyn Write) -> CliResult {
    let samples = parse_samples(&read_source(&args.input, input)?)?;
    let seed = match &args.config {
        Some(c) => {
            let dp = PlanConfig::load(c)?.plant.derive()?;
            Some((dp.delta, dp.omega_d))
        }
        None => None,
    };
    let fit = fit_residual(&samples, args.t_start, seed)?;
    let doc = format!(
        "[fit]\nt_start = {}\nsamples = {}\na0 = {}\ndelta = {}\nomega_d = {}\nphi0 = {}\noffset = {}\nrms = {}\niterations = {}\n",
        fmt_f64(args.t_start),
        samples.iter().filter(|s| s.0 >= args.t_start).count(),
        fmt_f64(fit.a0),
        fmt_f64(fit.delta),
        fmt_f64(fit.omega_d),
        fmt_f64(fit.phi0),
        fmt_f64(fit.offset),
        fmt_f64(fit.rms),
        fit.iterations,
    );
    out.write_all(doc.as_bytes())?;
    Ok(())
}

pub fn cmd_critical_damping(args: &CriticalDampingArgs, out: &mut dyn Write) -> CliResult {
    use rayon::prelude::*;
    let cfg = PlanConfig::load(&args.config.config)?;
    let r = &args.range;
    let a_values = acceleration_grid(r.a_min, r.a_hi, r.points, r.log)?;
    let j_max = args.j_max.unwrap_or(cfg.limits.j_lim);
    let settings = cfg.settings();
    let rows = with_jobs(args.jobs, || {
        a_values
            .par_iter()
            .map(|&a| critical_damping_with(&cfg.plant, a, j_max, &settings))
            .collect::<Vec<_>>()
    })?;
    let mut text = String::from("a_max,d_crit,status\n");
    for (a, row) in a_values.iter().zip(rows) {
        let (d, status) = match row {
            Ok(d) => (fmt_f64(d), "ok".to_string()),
            Err(e) => (String::new(), csv_field(&e.to_string())),
        };
        let _ = writeln!(text, "{},{},{}", fmt_f64(*a), d, status);
    }
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// Path of a bundled preset file, for documentation and tests.
pub fn preset_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("presets").join(format!("{name}.cfg"))
}
