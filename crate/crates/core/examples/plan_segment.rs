//! Plans one segment on the reference axis and checks it.

use jerkseg::planner::{plan_segment, verify_segment};
use jerkseg::SystemParams;

fn main() -> jerkseg::Result<()> {
    let sys = SystemParams::table1();
    let seg = plan_segment(&sys, 20.0, 800.0, 48)?;
    println!("t_f = {:.6} ms with {} negative section(s)", seg.t_f * 1e3, seg.n_el());
    for (t, a) in seg.times.iter().zip(&seg.coeffs) {
        println!("  t = {:9.6} ms  step {:+.0} j_max", t * 1e3, a);
    }
    let report = verify_segment(&seg, &sys)?;
    println!(
        "terminal residuals: x {:.1e} m, x_dot {:.1e} m/s, z_ddot {:.1e} m/s^2",
        report.terminal.x, report.terminal.x_dot, report.terminal.z_ddot
    );
    println!("verification passed: {}", report.passed());
    Ok(())
}
