//! Reduced three-mode states from the Kraus pipeline, compared with the
//! closed-form matrices.

use horizon_gtn::noise::FilterParams;
use horizon_gtn::qcore::as_x_state;
use horizon_gtn::reduced::{closed_form, max_abs_diff, pipeline, ModelParams, Subsystem};

fn main() -> horizon_gtn::Result<()> {
    let mp = ModelParams {
        temperature: 0.8,
        r: 0.4,
        p: 0.9,
        filter: FilterParams::active(0.7)?,
        ..Default::default()
    };
    println!("{:<7} {:>10} {:>12}  X form", "sub", "Z", "max |diff|");
    for sub in Subsystem::ALL {
        let (rho, z) = pipeline(&mp, sub)?;
        let closed = closed_form(sub, &mp)?;
        let diff = max_abs_diff(rho.entries(), closed.entries());
        let shape = match as_x_state(&rho, 1e-12) {
            Ok(_) => "yes".to_string(),
            Err(e) => format!("no ({e})"),
        };
        println!("{:<7} {z:>10.6} {diff:>12.3e}  {shape}", sub.tag());
    }

    let (rho, _) = pipeline(&mp, Subsystem::AB1C1)?;
    let x = as_x_state(&rho, 1e-12)?;
    println!("\nAB1C1 X parameters:\n  mu = {:?}\n  nu = {:?}\n  |w1| = {:.8}", x.mu, x.nu, x.w[0].norm());
    Ok(())
}
