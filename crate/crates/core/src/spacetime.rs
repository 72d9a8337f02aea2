//! Kruskal-mode dilation of Bob's and Charlie's Dirac modes near a
//! Schwarzschild horizon.
//!
//! Natural units throughout (ħ = c = k_B = G = 1).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{ModeLabel, PureState};

/// Below this ratio `T / ω` the thermal amplitude is treated as exactly zero.
pub const ZERO_TEMPERATURE_RATIO: f64 = 1e-6;

/// Hawking temperature `1 / (8πM)` of a black hole of mass `mass`.
pub fn hawking_temperature(mass: f64) -> Result<f64> {
    if !(mass > 0.0) {
        return Err(Error::domain("M", mass, "black-hole mass must be positive"));
    }
    Ok(1.0 / (8.0 * PI * mass))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimeParams {
    omega: f64,
    temperature: f64,
}

impl SpacetimeParams {
    pub fn new(omega: f64, temperature: f64) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::domain("omega", omega, "mode frequency must be positive"));
        }
        if !(temperature >= 0.0) || !temperature.is_finite() {
            return Err(Error::domain("T", temperature, "temperature must be nonnegative"));
        }
        Ok(SpacetimeParams { omega, temperature })
    }

    pub fn from_mass(omega: f64, mass: f64) -> Result<Self> {
        Self::new(omega, hawking_temperature(mass)?)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// `(c, s)` with `c = (e^{-ω/T} + 1)^{-1/2}` and `s = (e^{ω/T} + 1)^{-1/2}`.
    pub fn amplitudes(&self) -> ModeAmplitudes {
        if self.temperature < ZERO_TEMPERATURE_RATIO * self.omega {
            return ModeAmplitudes { c: 1.0, s: 0.0 };
        }
        let x = self.omega / self.temperature;
        ModeAmplitudes {
            c: (1.0 + (-x).exp()).powf(-0.5),
            // large x: exp overflows to inf and s underflows to 0, which is the limit
            s: (1.0 + x.exp()).powf(-0.5),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeAmplitudes {
    /// Weight of `|0⟩_I |0⟩_II` in the Kruskal vacuum.
    pub c: f64,
    /// Weight of `|1⟩_I |1⟩_II` in the Kruskal vacuum.
    pub s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialStateParams {
    alpha: f64,
}

impl InitialStateParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::domain("alpha", alpha, "state parameter must lie in [0, 1]"));
        }
        Ok(InitialStateParams { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Amplitude `√(1 − α²)` of the `|111⟩` branch.
    pub fn beta(&self) -> f64 {
        (1.0 - self.alpha * self.alpha).max(0.0).sqrt()
    }
}

/// Observer whose Kruskal mode is expanded into an outside/inside pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observer {
    Bob,
    Charlie,
}

impl Observer {
    /// `(outside, inside)` mode labels.
    pub fn modes(self) -> (ModeLabel, ModeLabel) {
        match self {
            Observer::Bob => (ModeLabel::B1, ModeLabel::B2),
            Observer::Charlie => (ModeLabel::C1, ModeLabel::C2),
        }
    }
}

/// Two-qubit (outside, inside) expansion of an observer's Kruskal vacuum or
/// single-particle state.
pub fn kruskal_mode_pair(
    params: &SpacetimeParams,
    observer: Observer,
    excited: bool,
) -> PureState {
    let (outside, inside) = observer.modes();
    let labels = vec![outside, inside];
    let zero = Complex64::new(0.0, 0.0);
    let amps = if excited {
        // |1>_I |0>_II
        vec![zero, zero, Complex64::new(1.0, 0.0), zero]
    } else {
        let ModeAmplitudes { c, s } = params.amplitudes();
        vec![Complex64::new(c, 0.0), zero, zero, Complex64::new(s, 0.0)]
    };
    PureState::new(amps, labels).expect("Kruskal amplitudes are normalized")
}

/// Five-mode state on `(A, B1, B2, C1, C2)` obtained by expanding Bob's and
/// Charlie's modes of `α|000⟩ + √(1−α²)|111⟩` in Kruskal modes.
pub fn dilate_state(init: &InitialStateParams, st: &SpacetimeParams) -> PureState {
    let ket_a = |bit: usize| PureState::basis(vec![ModeLabel::A], bit).expect("valid basis");
    let branch = |bit: usize, excited: bool| {
        ket_a(bit)
            .tensor(&kruskal_mode_pair(st, Observer::Bob, excited))
            .and_then(|s| s.tensor(&kruskal_mode_pair(st, Observer::Charlie, excited)))
            .expect("disjoint modes")
    };
    let vacuum = branch(0, false);
    let excited = branch(1, true);
    PureState::superpose(&[
        (Complex64::new(init.alpha(), 0.0), &vacuum),
        (Complex64::new(init.beta(), 0.0), &excited),
    ])
    .expect("orthogonal branches with unit weight")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn index(bits: [usize; 5]) -> usize {
        bits.iter().fold(0, |acc, b| (acc << 1) | b)
    }

    #[test]
    fn hawking_temperature_values() {
        assert!((hawking_temperature(1.0 / (8.0 * PI)).unwrap() - 1.0).abs() < 1e-15);
        assert!((hawking_temperature(1.0).unwrap() - 0.039_788_735_772_973_83).abs() < 1e-15);
        assert!(hawking_temperature(1e300).unwrap() < 1e-300);
        assert!(hawking_temperature(0.0).is_err());
        assert!(hawking_temperature(-2.0).is_err());
    }

    #[test]
    fn from_mass_matches_temperature() {
        let st = SpacetimeParams::from_mass(1.0, 2.5).unwrap();
        assert!((st.temperature() - 1.0 / (8.0 * PI * 2.5)).abs() < 1e-12);
    }

    #[test]
    fn vacuum_limits() {
        let cold = SpacetimeParams::new(1.0, 0.0).unwrap();
        let v = kruskal_mode_pair(&cold, Observer::Bob, false);
        assert_eq!(v.amplitude(0).re, 1.0);
        assert_eq!(v.amplitude(3).re, 0.0);

        let hot = SpacetimeParams::new(1.0, 1e12).unwrap();
        let v = kruskal_mode_pair(&hot, Observer::Bob, false);
        assert!((v.amplitude(0).re - SQRT_HALF).abs() < 1e-12);
        assert!((v.amplitude(3).re - SQRT_HALF).abs() < 1e-12);
    }

    #[test]
    fn unit_ratio_amplitudes() {
        // 30-digit evaluation: c = 0.855019636400243663, s = 0.518595624133095747
        let st = SpacetimeParams::new(1.0, 1.0).unwrap();
        let ModeAmplitudes { c, s } = st.amplitudes();
        assert!((c - 0.855_019_636_400_243_7).abs() < 1e-15);
        assert!((s - 0.518_595_624_133_095_7).abs() < 1e-15);
        assert!((c * c + s * s - 1.0).abs() < 1e-14);
    }

    #[test]
    fn excited_pair_is_particle_outside() {
        let st = SpacetimeParams::new(1.0, 0.7).unwrap();
        let e = kruskal_mode_pair(&st, Observer::Charlie, true);
        assert_eq!(e.labels(), &[ModeLabel::C1, ModeLabel::C2]);
        assert_eq!(e.amplitude(2).re, 1.0);
    }

    #[test]
    fn zero_temperature_dilation_is_ghz_like() {
        let st = SpacetimeParams::new(1.0, 0.0).unwrap();
        let psi = dilate_state(&InitialStateParams::new(SQRT_HALF).unwrap(), &st);
        assert_eq!(psi.labels(), &ModeLabel::ALL);
        for i in 0..32 {
            let expected = if i == 0 || i == index([1, 1, 0, 1, 0]) {
                SQRT_HALF
            } else {
                0.0
            };
            assert!((psi.amplitude(i).re - expected).abs() < 1e-15, "index {i}");
        }
    }

    #[test]
    fn alpha_one_is_product_across_a() {
        let st = SpacetimeParams::new(1.0, 0.8).unwrap();
        let psi = dilate_state(&InitialStateParams::new(1.0).unwrap(), &st);
        assert!((16..32).all(|i| psi.amplitude(i).norm() == 0.0));
    }

    #[test]
    fn thermal_coefficient_at_unit_ratio() {
        // alpha / (e + 1) with alpha = sqrt(2)/2, 30-digit value 0.190170302792672216
        let st = SpacetimeParams::new(1.0, 1.0).unwrap();
        let psi = dilate_state(&InitialStateParams::new(SQRT_HALF).unwrap(), &st);
        assert!((psi.amplitude(index([0, 1, 1, 1, 1])).re - 0.190_170_302_792_672_2).abs() < 1e-15);
    }

    #[test]
    fn alpha_out_of_range() {
        assert!(InitialStateParams::new(1.2).is_err());
        assert!(InitialStateParams::new(-0.1).is_err());
        assert!(SpacetimeParams::new(0.0, 1.0).is_err());
        assert!(SpacetimeParams::new(1.0, -1.0).is_err());
    }
}
