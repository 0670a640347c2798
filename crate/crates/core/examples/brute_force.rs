//! Cross-checks the planner against an exhaustive grid search.

use jerkseg::planner::plan_segment;
use jerkseg::verify::brute_force_n4;
use jerkseg::SystemParams;

fn main() -> jerkseg::Result<()> {
    let sys = SystemParams::table1();
    let grid = 2e-5;
    for a_max in [5.0, 10.0, 20.0] {
        let seg = plan_segment(&sys, a_max, 800.0, 48)?;
        let bf = brute_force_n4(&sys, a_max, 800.0, grid)?;
        println!(
            "a_max = {a_max:4}: planner {:.5} ms, grid {:.5} ms ({} candidates), switches {:.3}/{:.3} ms vs {:.3}/{:.3} ms",
            seg.t_f * 1e3,
            bf.t_f * 1e3,
            bf.candidates,
            seg.times[1] * 1e3,
            seg.times[2] * 1e3,
            bf.t2 * 1e3,
            bf.t3 * 1e3
        );
    }
    Ok(())
}
