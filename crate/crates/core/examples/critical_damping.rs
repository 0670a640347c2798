//! Damping below which a segment needs more than one negative section.

use jerkseg::analysis::critical_damping;
use jerkseg::SystemParams;

fn main() {
    let sys = SystemParams::table1();
    println!("reference damping d = {} kg/s", sys.d);
    for a_max in [20.0, 28.0, 30.0, 32.0, 34.0, 36.0, 38.0, 40.0] {
        match critical_damping(&sys, a_max, 800.0) {
            Ok(d) => println!("a_max = {a_max:4}: d_crit = {d:8.2} kg/s"),
            Err(e) => println!("a_max = {a_max:4}: {e}"),
        }
    }
}
