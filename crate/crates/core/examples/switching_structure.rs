//! Negative sections of the switching function for a given terminal angle.

use jerkseg::switching::{maximum_angle, solve_structure, switching_fn};
use jerkseg::SystemParams;

fn main() -> jerkseg::Result<()> {
    for (name, sys) in [("reference", SystemParams::table1()), ("undamped", SystemParams::table1().with_damping(0.0))] {
        let p1 = sys.derive()?.p1;
        let a_star = 7.0;
        for phi_f in [7.5, 9.0, 10.0] {
            let s = solve_structure(phi_f, a_star, p1)?;
            println!("{name}: phi_f = {phi_f}, {} section(s), C1 = {:.6}, widths {:?}", s.n_el, s.c1, s.widths());
            let top = maximum_angle(p1, 0);
            println!("  lambda at last maximum {:.3e}, at right zero {:.1e}", switching_fn(top, s.c1, p1), switching_fn(s.anchor, s.c1, p1));
        }
    }
    Ok(())
}
