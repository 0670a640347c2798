//! Squared-length mismatch over the search interval for two accelerations.

use jerkseg::analysis::error_curve;
use jerkseg::SystemParams;

fn main() -> jerkseg::Result<()> {
    let sys = SystemParams::table1();
    let omega_d = sys.derive()?.omega_d;
    for curve in error_curve(&sys, &[20.0, 40.0], 800.0, 16)? {
        println!("a_max = {} (root at t_f = {:.4} ms, {} sign change)", curve.a_max, curve.root / omega_d * 1e3, curve.sign_changes());
        for (phi, err) in &curve.points {
            println!("  t_f = {:8.4} ms  error {:+.4e}", phi / omega_d * 1e3, err);
        }
    }
    Ok(())
}
