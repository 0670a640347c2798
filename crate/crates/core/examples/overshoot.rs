//! Accelerations at which the slider briefly exceeds its terminal value.

use jerkseg::planner::plan_segment;
use jerkseg::SystemParams;

fn main() -> jerkseg::Result<()> {
    let sys = SystemParams::table1();
    for i in 0..=24 {
        let a_max = 26.0 + 0.5 * i as f64;
        let o = plan_segment(&sys, a_max, 800.0, 48)?.overshoot;
        println!(
            "a_max = {a_max:5.1}: peak {:7.3} m/s^2 at {:6.3} ms{}",
            o.max_accel,
            o.argmax_t * 1e3,
            if o.exceeds { "  exceeds" } else { "" }
        );
    }
    Ok(())
}
