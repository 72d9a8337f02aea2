//! Hawking temperature and the Kruskal expansion of Bob's and Charlie's
//! modes into outside/inside pairs.

use horizon_gtn::spacetime::{dilate_state, hawking_temperature, InitialStateParams, SpacetimeParams};

fn main() -> horizon_gtn::Result<()> {
    for mass in [0.5, 1.0, 10.0] {
        println!("M = {mass:>5}: T = {:.6}", hawking_temperature(mass)?);
    }

    println!("\n  T        c          s");
    for t in [0.0, 0.25, 0.5, 1.0, 3.0, 1e6] {
        let a = SpacetimeParams::new(1.0, t)?.amplitudes();
        println!("{t:>8} {:.8} {:.8}", a.c, a.s);
    }

    let psi = dilate_state(&InitialStateParams::new(0.5f64.sqrt())?, &SpacetimeParams::new(1.0, 1.0)?);
    println!("\nnonzero amplitudes on (A, B1, B2, C1, C2) at T = 1:");
    for i in 0..psi.dim() {
        let amp = psi.amplitude(i);
        if amp.norm() > 0.0 {
            println!("  |{i:05b}>  {:+.10}", amp.re);
        }
    }
    Ok(())
}
