//! Tripartite reductions of the evolved five-mode state.
//!
//! Two routes are provided. [`reduce`] takes the partial trace of the
//! evolved state and is the reference. [`closed_form`] evaluates closed-form
//! matrix entries written in symbols `e`, `h`, read here as the channel
//! parameters `r`, `p`. The closed forms for ρ_{AB₁C₁}, ρ_{AB₂C₂} and ρ_{AB₁C₂}
//! agree with the partial trace to rounding. The closed form for ρ_{AB₁B₂}
//! does not: the true reduction has its only coherence between |000⟩ and
//! |011⟩ (so it is not an X state), and its normalization differs. That form
//! is still returned so the discrepancy can be measured.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::noise::{evolve, Evolved, FilterParams, GadParams, MIN_FILTER_WEIGHT};
use crate::qcore::{partial_trace, CMatrix, DensityMatrix, ModeLabel, XState};
use crate::spacetime::{dilate_state, InitialStateParams, ModeAmplitudes, SpacetimeParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subsystem {
    AB1C1,
    AB1B2,
    AC1C2,
    AB2C2,
    AB1C2,
    AB2C1,
}

impl Subsystem {
    pub const ALL: [Subsystem; 6] = [
        Subsystem::AB1C1,
        Subsystem::AB1B2,
        Subsystem::AC1C2,
        Subsystem::AB2C2,
        Subsystem::AB1C2,
        Subsystem::AB2C1,
    ];

    /// The four reductions that have their own closed forms.
    pub const CLOSED_FORM_BASES: [Subsystem; 4] = [
        Subsystem::AB1C1,
        Subsystem::AB1B2,
        Subsystem::AB2C2,
        Subsystem::AB1C2,
    ];

    pub fn modes(self) -> [ModeLabel; 3] {
        use ModeLabel::*;
        match self {
            Subsystem::AB1C1 => [A, B1, C1],
            Subsystem::AB1B2 => [A, B1, B2],
            Subsystem::AC1C2 => [A, C1, C2],
            Subsystem::AB2C2 => [A, B2, C2],
            Subsystem::AB1C2 => [A, B1, C2],
            Subsystem::AB2C1 => [A, B2, C1],
        }
    }

    /// Partner under the Bob ↔ Charlie exchange.
    pub fn mirror(self) -> Subsystem {
        match self {
            Subsystem::AB1B2 => Subsystem::AC1C2,
            Subsystem::AC1C2 => Subsystem::AB1B2,
            Subsystem::AB1C2 => Subsystem::AB2C1,
            Subsystem::AB2C1 => Subsystem::AB1C2,
            s => s,
        }
    }

    /// Both remaining observer modes lie outside the horizon.
    pub fn is_accessible(self) -> bool {
        self == Subsystem::AB1C1
    }

    pub fn tag(self) -> &'static str {
        match self {
            Subsystem::AB1C1 => "AB1C1",
            Subsystem::AB1B2 => "AB1B2",
            Subsystem::AC1C2 => "AC1C2",
            Subsystem::AB2C2 => "AB2C2",
            Subsystem::AB1C2 => "AB1C2",
            Subsystem::AB2C1 => "AB2C1",
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Subsystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace(['_', ' '], "");
        Subsystem::ALL
            .into_iter()
            .find(|sub| sub.tag() == norm)
            .ok_or_else(|| Error::Label(format!("unknown subsystem {s:?}")))
    }
}

/// Full physical parameter tuple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub alpha: f64,
    pub omega: f64,
    pub temperature: f64,
    pub r: f64,
    pub p: f64,
    pub filter: FilterParams,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            alpha: std::f64::consts::FRAC_1_SQRT_2,
            omega: 1.0,
            temperature: 0.0,
            r: 0.0,
            p: 1.0,
            filter: FilterParams::Off,
        }
    }
}

impl ModelParams {
    pub fn initial(&self) -> Result<InitialStateParams> {
        InitialStateParams::new(self.alpha)
    }

    pub fn spacetime(&self) -> Result<SpacetimeParams> {
        SpacetimeParams::new(self.omega, self.temperature)
    }

    pub fn gad(&self) -> Result<GadParams> {
        GadParams::new(self.r, self.p)
    }

    pub fn validate(&self) -> Result<()> {
        self.initial()?;
        self.spacetime()?;
        self.gad()?;
        if let FilterParams::Active(f) = self.filter {
            FilterParams::active(f)?;
        }
        Ok(())
    }

    pub fn with_temperature(mut self, t: f64) -> Self {
        self.temperature = t;
        self
    }
}

/// Dilated initial state pushed through GAD and the filter.
pub fn evolve_model(mp: &ModelParams) -> Result<Evolved> {
    let psi = dilate_state(&mp.initial()?, &mp.spacetime()?);
    evolve(&psi, mp.gad()?, mp.filter)
}

/// Partial trace of the five-mode state onto `sub`. The two mirrored
/// subsystems are computed by exchanging Bob and Charlie, tracing onto the
/// partner, and exchanging back.
pub fn reduce(rho5: &DensityMatrix, sub: Subsystem) -> Result<DensityMatrix> {
    match sub {
        Subsystem::AC1C2 | Subsystem::AB2C1 => {
            let swapped = rho5.relabel(ModeLabel::swap_bob_charlie)?;
            partial_trace(&swapped, &sub.mirror().modes())?.relabel(ModeLabel::swap_bob_charlie)
        }
        _ => partial_trace(rho5, &sub.modes()),
    }
}

/// Evolved, reduced state together with the filter success probability.
pub fn pipeline(mp: &ModelParams, sub: Subsystem) -> Result<(DensityMatrix, f64)> {
    let Evolved { rho, z } = evolve_model(mp)?;
    Ok((reduce(&rho, sub)?, z))
}

/// Closed-form matrix for `sub`, divided by its normalization `Z₁`.
/// With the filter off the forms are evaluated at `f = 1/2`.
pub fn closed_form(sub: Subsystem, mp: &ModelParams) -> Result<DensityMatrix> {
    closed_form_with_norm(sub, mp).map(|(rho, _)| rho)
}

/// [`closed_form`] plus its `Z₁`.
pub fn closed_form_with_norm(sub: Subsystem, mp: &ModelParams) -> Result<(DensityMatrix, f64)> {
    mp.validate()?;
    let sym = Symbols::new(mp);
    let (x, z) = match sub {
        Subsystem::AB1C1 => sym.accessible(),
        Subsystem::AB1B2 | Subsystem::AC1C2 => sym.bob_pair(),
        Subsystem::AB2C2 => sym.inside_pair(),
        Subsystem::AB1C2 | Subsystem::AB2C1 => sym.bob_out_charlie_in(),
    };
    if !(z > MIN_FILTER_WEIGHT) {
        return Err(Error::FilterAnnihilation { z });
    }
    let entries = x.to_matrix() * Complex64::new(1.0 / z, 0.0);
    let base = sub.mirror().min(sub);
    let rho = DensityMatrix::new(entries, base.modes().to_vec())?;
    let rho = if base == sub {
        rho
    } else {
        rho.relabel(ModeLabel::swap_bob_charlie)?
    };
    Ok((rho, z))
}

/// Shorthand for the quantities appearing in the closed-form entries.
///
/// `e^{x}/(1+e^{x}) = (1+e^{−x})^{−1} = c²`, `(1+e^{x})^{−1} = s²`,
/// `(2+e^{x}+e^{−x})^{−1} = ¼ sech²(x/2) = c²s²` with `x = ω/T`; writing the
/// entries through `c` and `s` keeps them finite as `T → 0`.
struct Symbols {
    a2: f64,
    b2: f64,
    ab: f64,
    c2: f64,
    s2: f64,
    cs: f64,
    /// `e` in the closed forms
    r: f64,
    /// `h` in the closed forms
    p: f64,
    f: f64,
}

impl Symbols {
    fn new(mp: &ModelParams) -> Self {
        let ModeAmplitudes { c, s } = SpacetimeParams::new(mp.omega, mp.temperature)
            .expect("validated")
            .amplitudes();
        let a2 = mp.alpha * mp.alpha;
        let b2 = 1.0 - a2;
        Symbols {
            a2,
            b2,
            ab: mp.alpha * b2.max(0.0).sqrt(),
            c2: c * c,
            s2: s * s,
            cs: c * s,
            r: mp.r,
            p: mp.p,
            f: mp.filter.strength().unwrap_or(0.5),
        }
    }

    /// `f + (2f − 1)(α²(e − 1) − e h)`
    fn z_common(&self) -> f64 {
        let Symbols { a2, r, p, f, .. } = *self;
        f + (-1.0 + 2.0 * f) * (a2 * (-1.0 + r) - r * p)
    }

    fn filter_coherence(&self) -> f64 {
        // √(−(−1+f)f) written in its nonnegative form
        (self.f * (1.0 - self.f)).max(0.0).sqrt()
    }

    fn accessible(&self) -> (XState, f64) {
        let Symbols { a2, c2, s2, cs, r: e, p: h, f, .. } = *self;
        let mu1 = -a2 * c2 * c2 * (-1.0 + f) * (1.0 + e * (-1.0 + h));
        let mu2 = -a2 * (-1.0 + f) * (1.0 + e * (-1.0 + h)) * cs * cs;
        let mu4 = (1.0 - f) * (e * h + a2 * ((1.0 + e * (-1.0 + h)) * s2 * s2 - e * h));
        let nu1 = -a2 * e * f * (-1.0 + h) * s2 * s2 + (-1.0 + a2) * f * (-1.0 + e * h);
        let nu2 = -a2 * e * f * (-1.0 + h) * cs * cs;
        let nu4 = a2 * e * f * (1.0 - h) * c2 * c2;
        let w1 = self.ab * (1.0 - e).sqrt() * c2 * self.filter_coherence();
        (
            XState {
                mu: [mu1, mu2, mu2, mu4],
                nu: [nu1, nu2, nu2, nu4],
                w: [Complex64::new(w1, 0.0), zero(), zero(), zero()],
            },
            self.z_common(),
        )
    }

    fn bob_pair(&self) -> (XState, f64) {
        let Symbols { a2, b2, c2, s2, cs, r: e, p: h, f, .. } = *self;
        let mu1 = (1.0 - f) * (a2 * (1.0 - e) * (1.0 - h) * c2 + a2 * h * c2);
        let mu3 = b2 * e * (1.0 - f) * h;
        let mu4 = a2 * e * (1.0 - f) * h * s2;
        let nu1 = f * (a2 * (1.0 - h) * s2 + a2 * (1.0 - e) * h * s2);
        let nu2 = f * (b2 * (1.0 - h) + b2 * (1.0 - e) * h);
        let nu4 = a2 * e * f * (1.0 - h) * c2;
        let w1 = self.filter_coherence()
            * (a2 * (1.0 - e).sqrt() * (1.0 - h) * cs + a2 * (1.0 - e).sqrt() * h * cs);
        let z = (f + e * h - 2.0 * e * f * h) * s2 + c2 * self.z_common();
        (
            XState {
                mu: [mu1, 0.0, mu3, mu4],
                nu: [nu1, nu2, 0.0, nu4],
                w: [Complex64::new(w1, 0.0), zero(), zero(), zero()],
            },
            z,
        )
    }

    fn inside_pair(&self) -> (XState, f64) {
        let Symbols { a2, b2, c2, s2, cs, r: e, p: h, f, .. } = *self;
        let cross = cs * cs;
        let mu1 = (1.0 - f) * (a2 * (1.0 - e) * (1.0 - h) * c2 * c2 + b2 * e * h + a2 * h * c2 * c2);
        let mu2 = (1.0 - f) * (a2 * (1.0 - e) * (1.0 - h) * cross + a2 * h * cross);
        let mu4 = (1.0 - f) * (a2 * (1.0 - e) * (1.0 - h) * s2 * s2 + a2 * h * s2 * s2);
        let nu1 = a2 * e * f * (1.0 - h) * s2 * s2;
        let nu2 = a2 * e * f * (1.0 - h) * cross;
        let nu4 = f * (b2 * (1.0 - h) + a2 * e * (1.0 - h) * c2 * c2 + b2 * (1.0 - e) * h);
        let w4 = self.filter_coherence()
            * (self.ab * (1.0 - e).sqrt() * (1.0 - h) * s2 + self.ab * (1.0 - e).sqrt() * h * s2);
        (
            XState {
                mu: [mu1, mu2, mu2, mu4],
                nu: [nu1, nu2, nu2, nu4],
                w: [zero(), zero(), zero(), Complex64::new(w4, 0.0)],
            },
            self.z_common(),
        )
    }

    fn bob_out_charlie_in(&self) -> (XState, f64) {
        let Symbols { a2, b2, c2, s2, cs, r: e, p: h, f, .. } = *self;
        let cross = cs * cs;
        let mu1 = (1.0 - f) * (a2 * (1.0 - e) * (1.0 - h) * c2 * c2 + a2 * h * c2 * c2);
        let mu2 = (1.0 - f) * (a2 * (1.0 - e) * (1.0 - h) * cross + a2 * h * cross);
        let mu3 = (1.0 - f) * (a2 * (1.0 - e) * (1.0 - h) * cross + b2 * e * h + a2 * h * cross);
        let mu4 = (1.0 - f) * (a2 * (1.0 - e) * (1.0 - h) * s2 * s2 + a2 * h * s2 * s2);
        let nu1 = a2 * e * f * (1.0 - h) * s2 * s2;
        let nu2 = f * (b2 * (1.0 - h) + a2 * e * (1.0 - h) * cross + b2 * (1.0 - e) * h);
        let nu3 = a2 * e * f * (1.0 - h) * cross;
        let nu4 = a2 * e * f * (1.0 - h) * c2 * c2;
        let w2 = self.filter_coherence()
            * (self.ab * (1.0 - e).sqrt() * (1.0 - h) * cs + self.ab * (1.0 - e).sqrt() * h * cs);
        (
            XState {
                mu: [mu1, mu2, mu3, mu4],
                nu: [nu1, nu2, nu3, nu4],
                w: [zero(), Complex64::new(w2, 0.0), zero(), zero()],
            },
            self.z_common(),
        )
    }
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Largest entrywise deviation between the two routes.
pub fn route_deviation(sub: Subsystem, mp: &ModelParams) -> Result<f64> {
    let (pipe, _) = pipeline(mp, sub)?;
    let closed = closed_form(sub, mp)?;
    Ok(max_abs_diff(pipe.entries(), closed.entries()))
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|v| v.norm()).fold(0.0, f64::max)
}
