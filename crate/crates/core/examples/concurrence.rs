//! Genuine tripartite concurrence of pure states and of X states.

use horizon_gtn::measures::{genuine_concurrence, gtc_pure, gtc_x};
use horizon_gtn::qcore::{as_x_state, ModeLabel, PureState, C64};
use horizon_gtn::reduced::{pipeline, ModelParams, Subsystem};

fn ket(amps: &[(usize, f64)]) -> horizon_gtn::Result<PureState> {
    let mut v = vec![C64::new(0.0, 0.0); 8];
    for &(i, a) in amps {
        v[i] = C64::new(a, 0.0);
    }
    PureState::normalized(v, vec![ModeLabel::A, ModeLabel::B1, ModeLabel::C1])
}

fn main() -> horizon_gtn::Result<()> {
    let states = [
        ("GHZ", ket(&[(0, 1.0), (7, 1.0)])?),
        ("alpha-GHZ a^2=0.2", ket(&[(0, 0.2f64.sqrt()), (7, 0.8f64.sqrt())])?),
        ("W", ket(&[(1, 1.0), (2, 1.0), (4, 1.0)])?),
        ("|000>", ket(&[(0, 1.0)])?),
    ];
    for (name, psi) in &states {
        let x = as_x_state(&psi.to_density(), 1e-12).ok().map(|x| gtc_x(&x));
        println!("{name:<18} pure formula {:.6}   X formula {:?}", gtc_pure(psi)?, x);
    }

    println!("\nC(T) of AB1C1 and AB2C2, r = 0.4:");
    for t in [0.0, 0.5, 1.0, 2.0, 1e6] {
        let mp = ModelParams {
            temperature: t,
            r: 0.4,
            ..Default::default()
        };
        let c1 = genuine_concurrence(&pipeline(&mp, Subsystem::AB1C1)?.0)?;
        let c2 = genuine_concurrence(&pipeline(&mp, Subsystem::AB2C2)?.0)?;
        println!("  T = {t:>9}: {c1:.6}  {c2:.6}");
    }
    Ok(())
}
