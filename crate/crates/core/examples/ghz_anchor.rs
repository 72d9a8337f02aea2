//! Quick start: the GHZ-like state at zero temperature with no decoherence
//! is maximally nonlocal and maximally entangled.

use horizon_gtn::measures::{measure, MeasureSet, SearchConfig};
use horizon_gtn::reduced::{pipeline, ModelParams, Subsystem};

fn main() -> horizon_gtn::Result<()> {
    let mp = ModelParams::default();
    let (rho, z) = pipeline(&mp, Subsystem::AB1C1)?;
    let m = measure(&rho, MeasureSet::BOTH, &SearchConfig::default())?;
    println!("alpha = {:.6}, T = {}, r = {}, p = {}, filter {}", mp.alpha, mp.temperature, mp.r, mp.p, mp.filter);
    println!("S = {:.12} (4*sqrt(2) = {:.12})", m.s.unwrap(), 4.0 * 2f64.sqrt());
    println!("C = {:.12}", m.c.unwrap());
    println!("Z = {z}");
    println!("nonlocal: {}", m.has_gtn().unwrap());
    Ok(())
}
