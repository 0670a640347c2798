//! Time-optimal jerk segments for a slider mounted on an elastically
//! supported base.
//!
//! A jerk segment raises the slider acceleration from zero to `a_max` under
//! a jerk bound so that the base ends at rest in its new static deflection.
//! [`planner::plan_segment`] computes it; [`analysis`] holds baselines and
//! parameter studies, [`verify`] independent numerical oracles.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod model;
pub mod planner;
pub mod switching;
pub mod verify;

pub use error::{Error, Result};
pub use model::{derive_params, DerivedParams, JerkProfile, KinematicLimits, SystemParams};
pub use planner::{plan_segment, plan_segment_with, verify_segment, JerkSegment, PlannerSettings};
