//! Fits the base oscillation left after an S-curve and after a planned
//! segment.

use jerkseg::analysis::{fit_residual, scurve_segment};
use jerkseg::planner::plan_segment;
use jerkseg::verify::rk4_integrate;
use jerkseg::{JerkProfile, SystemParams};

fn tail(sys: &SystemParams, profile: &JerkProfile, t_f: f64) -> jerkseg::Result<Vec<(f64, f64)>> {
    let traj = rk4_integrate(sys, profile, 1e-4, t_f + 0.1)?;
    Ok(traj.t.iter().zip(&traj.rows).map(|(&t, r)| (t, r.x)).collect())
}

fn main() -> jerkseg::Result<()> {
    let sys = SystemParams::table1();
    let dp = sys.derive()?;
    let seed = Some((dp.delta, dp.omega_d));
    let scurve = scurve_segment(20.0, 800.0)?;
    let seg = plan_segment(&sys, 20.0, 800.0, 48)?;
    for (name, profile, t_f) in [("scurve", scurve, 0.025), ("ocp", seg.profile(), seg.t_f)] {
        let fit = fit_residual(&tail(&sys, &profile, t_f)?, t_f, seed)?;
        println!(
            "{name:>6}: a0 = {:.3e} m, delta = {:.4} 1/s, f_d = {:.4} Hz, rms = {:.1e} m",
            fit.a0,
            fit.delta,
            fit.omega_d / std::f64::consts::TAU,
            fit.rms
        );
    }
    Ok(())
}
