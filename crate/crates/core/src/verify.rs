//! Self-checks: closed-form matrices against the Kraus pipeline, and the
//! closed-form Svetlichny values against the numerical search.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::measures::{svetlichny_bruteforce, svetlichny_classical_first, svetlichny_x, SearchConfig};
use crate::noise::FilterParams;
use crate::qcore::as_x_state;
use crate::reduced::{pipeline, route_deviation, ModelParams, Subsystem};

/// Entrywise agreement demanded of the closed-form matrices.
pub const ROUTE_TOL: f64 = 1e-10;
/// Agreement demanded between closed-form and searched Svetlichny values.
pub const ORACLE_TOL: f64 = 1e-6;

/// Random tuple with `α ∈ [0, 1]`, `ω ∈ [0.5, 2]`, `ω/T ∈ [0.1, 20]`,
/// `r, p ∈ [0, 1]`, and the filter off a quarter of the time, otherwise
/// `f ∈ (0.05, 0.95)`.
pub fn random_model_params<R: Rng>(rng: &mut R) -> ModelParams {
    let omega = rng.gen_range(0.5..2.0);
    let ratio = rng.gen_range(0.1..=20.0);
    ModelParams {
        alpha: rng.gen_range(0.0..=1.0),
        omega,
        temperature: omega / ratio,
        r: rng.gen_range(0.0..=1.0),
        p: rng.gen_range(0.0..=1.0),
        filter: if rng.gen_bool(0.25) {
            FilterParams::Off
        } else {
            FilterParams::Active(rng.gen_range(0.05..0.95))
        },
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteCheck {
    pub subsystem: Subsystem,
    pub tuples: usize,
    pub max_deviation: f64,
    pub worst: ModelParams,
}

impl RouteCheck {
    pub fn passed(&self) -> bool {
        self.max_deviation <= ROUTE_TOL
    }
}

/// Largest closed-form vs pipeline gap per subsystem over `n` random tuples.
pub fn route_suite(n: usize, seed: u64) -> Result<Vec<RouteCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tuples: Vec<ModelParams> = (0..n).map(|_| random_model_params(&mut rng)).collect();
    Subsystem::ALL
        .iter()
        .map(|&sub| {
            let mut check = RouteCheck {
                subsystem: sub,
                tuples: n,
                max_deviation: 0.0,
                worst: ModelParams::default(),
            };
            for mp in &tuples {
                let d = route_deviation(sub, mp)?;
                if d > check.max_deviation {
                    check.max_deviation = d;
                    check.worst = *mp;
                }
            }
            Ok(check)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheck {
    pub label: &'static str,
    pub states: usize,
    pub max_gap: f64,
    pub worst: Option<(Subsystem, ModelParams)>,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.max_gap <= ORACLE_TOL
    }
}

/// Closed-form `S` of X-shaped model states vs the search.
pub fn x_oracle_suite(n: usize, seed: u64, search: &SearchConfig) -> Result<OracleCheck> {
    const X_SUBSYSTEMS: [Subsystem; 4] = [
        Subsystem::AB1C1,
        Subsystem::AB2C2,
        Subsystem::AB1C2,
        Subsystem::AB2C1,
    ];
    oracle_suite("X-state closed form", &X_SUBSYSTEMS, n, seed, search, |rho| {
        Ok(svetlichny_x(&as_x_state(rho, 1e-12)?))
    })
}

/// Exact `S` for states with a coherence-free first qubit vs the search.
pub fn classical_first_oracle_suite(n: usize, seed: u64, search: &SearchConfig) -> Result<OracleCheck> {
    oracle_suite(
        "coherence-free first qubit",
        &[Subsystem::AB1B2, Subsystem::AC1C2],
        n,
        seed,
        search,
        |rho| {
            Ok(svetlichny_classical_first(rho)?
                .expect("model states on these subsystems keep A coherence-free")
                .value)
        },
    )
}

fn oracle_suite(
    label: &'static str,
    subsystems: &[Subsystem],
    n: usize,
    seed: u64,
    search: &SearchConfig,
    exact: impl Fn(&crate::qcore::DensityMatrix) -> Result<f64>,
) -> Result<OracleCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut check = OracleCheck {
        label,
        states: n,
        max_gap: 0.0,
        worst: None,
    };
    for k in 0..n {
        let mp = random_model_params(&mut rng);
        let sub = subsystems[k % subsystems.len()];
        let (rho, _) = pipeline(&mp, sub)?;
        let gap = (exact(&rho)? - svetlichny_bruteforce(&rho, search)?.value).abs();
        if gap > check.max_gap || check.worst.is_none() {
            check.max_gap = check.max_gap.max(gap);
            check.worst = Some((sub, mp));
        }
    }
    Ok(check)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub routes: Vec<RouteCheck>,
    pub oracles: Vec<OracleCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.routes.iter().all(RouteCheck::passed) && self.oracles.iter().all(OracleCheck::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = |ok: bool| if ok { "PASS" } else { "FAIL" };
        for r in &self.routes {
            writeln!(
                f,
                "{} closed form vs pipeline {:<6} {} tuples, max deviation {:.3e} (tol {:e})",
                tag(r.passed()),
                r.subsystem.tag(),
                r.tuples,
                r.max_deviation,
                ROUTE_TOL
            )?;
        }
        for o in &self.oracles {
            writeln!(
                f,
                "{} Svetlichny search vs {} {} states, max gap {:.3e} (tol {:e})",
                tag(o.passed()),
                o.label,
                o.states,
                o.max_gap,
                ORACLE_TOL
            )?;
        }
        Ok(())
    }
}

/// Sizes of the standard suite.
pub const ROUTE_TUPLES: usize = 500;
pub const ORACLE_STATES: usize = 50;

pub fn run_all(seed: u64, search: &SearchConfig) -> Result<VerifyReport> {
    Ok(VerifyReport {
        routes: route_suite(ROUTE_TUPLES, seed)?,
        oracles: vec![
            x_oracle_suite(ORACLE_STATES, seed, search)?,
            classical_first_oracle_suite(ORACLE_STATES / 5, seed, search)?,
        ],
    })
}
