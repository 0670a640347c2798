use thiserror::Error;

/// Errors raised by planning, simulation and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("plant is not underdamped: d^2 = {d_sq} >= 4 k m_g = {limit}")]
    NotUnderdamped { d_sq: f64, limit: f64 },

    #[error("invalid jerk profile: {0}")]
    InvalidProfile(String),

    #[error("grid of {rows} rows exceeds the cap of {cap}")]
    GridTooLarge { rows: usize, cap: usize },

    #[error("switching function maximum {k} stays below C1 = {c1}")]
    NoZero { k: i32, c1: f64 },

    #[error("no C1 yields a total negative width of {target} rad")]
    NotBracketed { target: f64 },

    #[error("total negative width {delta_phi_abs} rad is outside [0, pi/2)")]
    OutOfRange { delta_phi_abs: f64 },

    #[error("polygon side has vanishing length ({0:e})")]
    DegenerateVector(f64),

    #[error("planning failed: {0}")]
    PlanningFailed(String),

    #[error("even an undamped plant needs a single negative section at a_max = {a_max}")]
    NeverMultiple { a_max: f64 },

    #[error("residual fit diverged: rms {rms:e} exceeds signal amplitude {amplitude:e}")]
    FitDiverged { rms: f64, amplitude: f64 },

    #[error("{0}")]
    InvalidInput(String),

    #[error("no grid candidate meets the feasibility tolerance")]
    NoFeasible,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
