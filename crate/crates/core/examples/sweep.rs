//! Terminal times of all methods over a range of accelerations.

use jerkseg::analysis::{acceleration_grid, sweep, Method};
use jerkseg::{PlannerSettings, SystemParams};

fn main() -> jerkseg::Result<()> {
    let sys = SystemParams::table1();
    let a_values = acceleration_grid(1.0, 40.0, 8, true)?;
    let rows = sweep(&sys, &a_values, &Method::ALL, 800.0, &PlannerSettings::default());
    println!("{:>8} {:>10} {:>10} {:>10} {:>8}", "a_max", "scurve", "ocp", "zv", "gain");
    for chunk in rows.chunks(Method::ALL.len()) {
        let t = |m: Method| chunk.iter().find(|r| r.method == m).and_then(|r| r.t_f).unwrap_or(f64::NAN);
        let (ocp, zv) = (t(Method::Ocp), t(Method::Zv));
        println!(
            "{:8.3} {:9.3}ms {:9.3}ms {:9.3}ms {:7.2}%",
            chunk[0].a_max,
            t(Method::Scurve) * 1e3,
            ocp * 1e3,
            zv * 1e3,
            100.0 * (zv - ocp) / zv
        );
    }
    Ok(())
}
