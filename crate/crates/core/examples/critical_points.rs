//! Critical temperature for the death of nonlocality, and the sudden-death
//! point of entanglement.

use horizon_gtn::reduced::{ModelParams, Subsystem};
use horizon_gtn::sweep::{find_critical_t, find_sudden_death_c, CriticalQuery, DeathVariable};
use horizon_gtn::Error;

fn main() -> horizon_gtn::Result<()> {
    println!("S = 4 crossing, AB1C1, p = 1, no filter:");
    for r in [0.0, 0.2, 0.4, 0.7] {
        let q = CriticalQuery::new(ModelParams { r, ..Default::default() }, Subsystem::AB1C1);
        match find_critical_t(&q, (0.0, 10.0), 4.0) {
            Ok(tc) => println!("  r = {r}: T_c = {tc:.10}"),
            Err(Error::NoCrossing { kind, .. }) => println!("  r = {r}: no crossing ({kind:?})"),
            Err(e) => return Err(e),
        }
    }

    println!("\nC = 0 boundary along T, AB1C1, r = 0.7:");
    for p in [1.0, 0.9, 0.8] {
        let q = CriticalQuery::new(ModelParams { r: 0.7, p, ..Default::default() }, Subsystem::AB1C1);
        match find_sudden_death_c(&q, DeathVariable::T, (0.0, 1e6)) {
            Ok(t) => println!("  p = {p}: entanglement dies at T = {t:.8}"),
            Err(Error::NoCrossing { kind, .. }) => println!("  p = {p}: no sudden death ({kind:?})"),
            Err(e) => return Err(e),
        }
    }

    println!("\nC = 0 boundary along r at T = 1, p = 0.8:");
    let q = CriticalQuery::new(ModelParams { temperature: 1.0, p: 0.8, ..Default::default() }, Subsystem::AB1C1);
    println!("  r* = {:.8}", find_sudden_death_c(&q, DeathVariable::R, (0.0, 1.0))?);
    Ok(())
}
