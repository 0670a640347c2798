//! Samples a planned segment with the closed forms and with RK4.

use jerkseg::model::sample_trajectory;
use jerkseg::planner::plan_segment;
use jerkseg::verify::rk4_integrate;
use jerkseg::SystemParams;

fn main() -> jerkseg::Result<()> {
    let sys = SystemParams::table1();
    let dp = sys.derive()?;
    let seg = plan_segment(&sys, 20.0, 800.0, 48)?;
    let t_end = seg.t_f + 0.02;
    let exact = sample_trajectory(&seg.profile(), 1e-3, t_end, &dp)?;
    let numeric = rk4_integrate(&sys, &seg.profile(), 1e-3, t_end)?;
    println!("{:>8} {:>10} {:>14} {:>14}", "t [ms]", "z_ddot", "x closed", "x rk4");
    for ((t, a), b) in exact.t.iter().zip(&exact.rows).zip(&numeric.rows) {
        println!("{:8.3} {:10.4} {:14.6e} {:14.6e}", t * 1e3, a.z_ddot, a.x, b.x);
    }
    println!("static deflection {:.6e} m", dp.static_deflection(20.0));
    Ok(())
}
