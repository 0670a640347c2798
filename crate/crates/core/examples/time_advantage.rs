//! Time saved by several negative sections over a single one, at reduced
//! damping.

use jerkseg::analysis::{time_advantage, ADVANTAGE_DAMPING_FRACTIONS};
use jerkseg::SystemParams;

fn main() -> jerkseg::Result<()> {
    let sys = SystemParams::table1();
    let d_values: Vec<f64> = ADVANTAGE_DAMPING_FRACTIONS.iter().map(|f| f * sys.d).collect();
    let a_values: Vec<f64> = (0..=12).map(|i| 28.0 + i as f64).collect();
    println!("{:>7} {:>6} {:>5} {:>10} {:>10} {:>8}", "d", "a_max", "n_el", "t_f", "single", "gain");
    for r in time_advantage(&sys, &a_values, &d_values, 800.0)? {
        println!(
            "{:7.1} {:6.1} {:5} {:8.4}ms {:8.4}ms {:7.3}%",
            r.d,
            r.a_max,
            r.n_el,
            r.t_f_opt * 1e3,
            r.t_f_single * 1e3,
            r.rel * 100.0
        );
    }
    Ok(())
}
