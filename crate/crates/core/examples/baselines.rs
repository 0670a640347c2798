//! Compares the optimal segment with the S-curve and zero-vibration ramps.

use jerkseg::analysis::{method_segment, Method};
use jerkseg::model::base_response;
use jerkseg::{PlannerSettings, SystemParams};

fn main() -> jerkseg::Result<()> {
    let sys = SystemParams::table1();
    let dp = sys.derive()?;
    let a_max = 20.0;
    for method in Method::ALL {
        let (profile, t_f) = method_segment(&sys, method, a_max, 800.0, &PlannerSettings::default())?;
        let end = base_response(&profile, t_f, &dp);
        let offset = end.x - dp.static_deflection(a_max);
        println!(
            "{:>6}: t_f = {:7.3} ms, base offset {:+.3e} m, base velocity {:+.3e} m/s",
            method.label(),
            t_f * 1e3,
            offset,
            end.x_dot
        );
    }
    Ok(())
}
