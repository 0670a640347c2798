//! Line search with the candidate held in `f32`, as on a PLC.

use jerkseg::planner::plan_segment_with;
use jerkseg::{PlannerSettings, SystemParams};

fn main() -> jerkseg::Result<()> {
    let sys = SystemParams::lab();
    let settings = PlannerSettings::single_precision().with_iterations(30);
    let seg = plan_segment_with(&sys, 6.0, 200.0, &settings)?;
    for (i, phi) in seg.trace.iter().enumerate() {
        let unchanged = i > 0 && *phi == seg.trace[i - 1];
        println!("iteration {:2}: phi_f = {phi:.9}{}", i + 1, if unchanged { "  (unchanged)" } else { "" });
    }
    println!("t_f = {:.6} ms, closure residual {:.1e}", seg.t_f * 1e3, seg.closure);
    Ok(())
}
