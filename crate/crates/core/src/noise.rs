//! Alice-side decoherence: generalized amplitude damping (GAD) followed by an
//! optional local filter and renormalization.

use std::fmt;

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{apply_single_qubit_kraus, DensityMatrix, ModeLabel, PureState};

pub type Operator2 = Matrix2<Complex64>;

/// Tolerance for `Σ Eᵢ†Eᵢ = I`.
pub const COMPLETENESS_TOL: f64 = 1e-12;
/// Filter success probabilities at or below this are treated as annihilation.
pub const MIN_FILTER_WEIGHT: f64 = 1e-15;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn op(m00: f64, m01: f64, m10: f64, m11: f64) -> Operator2 {
    Operator2::new(re(m00), re(m01), re(m10), re(m11))
}

/// Single-qubit Kraus operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    ops: Vec<Operator2>,
    trace_preserving: bool,
}

impl KrausSet {
    /// Trace-preserving set; fails unless `Σ Eᵢ†Eᵢ = I`.
    pub fn new(ops: Vec<Operator2>) -> Result<Self> {
        let dev = completeness_deviation(&ops);
        if dev > COMPLETENESS_TOL {
            return Err(Error::InvalidState(format!(
                "Kraus operators violate completeness by {dev:e}"
            )));
        }
        Ok(KrausSet {
            ops,
            trace_preserving: true,
        })
    }

    /// Non-trace-preserving map (e.g. a filter before renormalization).
    pub fn non_trace_preserving(ops: Vec<Operator2>) -> Self {
        KrausSet {
            ops,
            trace_preserving: false,
        }
    }

    pub fn ops(&self) -> &[Operator2] {
        &self.ops
    }

    pub fn is_trace_preserving(&self) -> bool {
        self.trace_preserving
    }

    pub fn completeness_deviation(&self) -> f64 {
        completeness_deviation(&self.ops)
    }
}

fn completeness_deviation(ops: &[Operator2]) -> f64 {
    let sum: Operator2 = ops.iter().map(|e| e.adjoint() * e).sum();
    (sum - Operator2::identity()).camax()
}

/// Strength `r` and mixing `p` of the GAD channel; `p = 1` is plain amplitude
/// damping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GadParams {
    pub r: f64,
    pub p: f64,
}

impl GadParams {
    pub fn new(r: f64, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::domain("r", r, "decoherence strength must lie in [0, 1]"));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain("p", p, "mixing parameter must lie in [0, 1]"));
        }
        Ok(GadParams { r, p })
    }
}

/// The four GAD Kraus operators `E₀..E₃`.
pub fn gad_kraus(g: GadParams) -> KrausSet {
    let GadParams { r, p } = g;
    let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
    let (keep, jump) = ((1.0 - r).sqrt(), r.sqrt());
    let ops = vec![
        op(sp, 0.0, 0.0, sp * keep),
        op(0.0, sp * jump, 0.0, 0.0),
        op(sq * keep, 0.0, 0.0, sq),
        op(0.0, 0.0, sq * jump, 0.0),
    ];
    KrausSet {
        ops,
        trace_preserving: true,
    }
}

/// Thermal bath description from which `(r, p)` can be derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathParams {
    pub gamma0: f64,
    pub t: f64,
    pub omega: f64,
    pub t_env: f64,
}

impl BathParams {
    pub fn new(gamma0: f64, t: f64, omega: f64, t_env: f64) -> Result<Self> {
        if !(gamma0 >= 0.0) {
            return Err(Error::domain("gamma0", gamma0, "relaxation rate must be nonnegative"));
        }
        if !(t >= 0.0) {
            return Err(Error::domain("t", t, "storage time must be nonnegative"));
        }
        if !(omega > 0.0) {
            return Err(Error::domain("omega", omega, "transition frequency must be positive"));
        }
        if !(t_env > 0.0) {
            return Err(Error::domain("T_env", t_env, "bath temperature must be positive"));
        }
        Ok(BathParams {
            gamma0,
            t,
            omega,
            t_env,
        })
    }

    fn mixing(&self) -> f64 {
        1.0 / (1.0 + (-self.omega / self.t_env).exp())
    }

    fn params_for_rate(&self, gamma: f64) -> Result<GadParams> {
        if self.t == 0.0 {
            return GadParams::new(0.0, self.mixing());
        }
        if gamma < 0.0 {
            return Err(Error::FormulaDomain { gamma });
        }
        GadParams::new(1.0 - (-gamma * self.t).exp(), self.mixing())
    }
}

/// `(r, p)` from the bath using the rate expression
/// `γ = [2 / (exp(−ω/T') − 1) + 1] γ₀`, taken literally.
///
/// That expression is negative for every `ω/T' > 0` when `γ₀ > 0`, so this
/// fails with [`Error::FormulaDomain`] unless `γ₀ = 0` or `t = 0`. See
/// [`gad_from_bath_thermal`] for the occupation-number form.
pub fn gad_from_bath(b: &BathParams) -> Result<GadParams> {
    let gamma = (2.0 / ((-b.omega / b.t_env).exp() - 1.0) + 1.0) * b.gamma0;
    b.params_for_rate(gamma)
}

/// Sign-corrected variant `γ = [2 / (exp(ω/T') − 1) + 1] γ₀ = coth(ω/2T') γ₀`,
/// i.e. `(2n̄ + 1) γ₀` with the Bose occupation `n̄`.
pub fn gad_from_bath_thermal(b: &BathParams) -> Result<GadParams> {
    let gamma = (2.0 / (b.omega / b.t_env).exp_m1() + 1.0) * b.gamma0;
    b.params_for_rate(gamma)
}

/// Local filter setting. `Off` skips the filter step entirely, which is the
/// unfiltered baseline (figure captions label it `f = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum FilterParams {
    #[default]
    Off,
    Active(f64),
}

impl FilterParams {
    pub fn active(f: f64) -> Result<Self> {
        if !(f > 0.0 && f < 1.0) {
            return Err(Error::domain("f", f, "filter strength must lie in (0, 1)"));
        }
        Ok(FilterParams::Active(f))
    }

    pub fn strength(&self) -> Option<f64> {
        match self {
            FilterParams::Off => None,
            FilterParams::Active(f) => Some(*f),
        }
    }

    /// Value written to CSV: the strength, or −1 when the filter is off.
    pub fn csv_value(&self) -> f64 {
        self.strength().unwrap_or(-1.0)
    }
}

impl fmt::Display for FilterParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterParams::Off => f.write_str("none"),
            FilterParams::Active(v) => write!(f, "{v}"),
        }
    }
}

impl std::str::FromStr for FilterParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("none") || s.eq_ignore_ascii_case("off") || s == "-1" {
            return Ok(FilterParams::Off);
        }
        let f: f64 = s
            .parse()
            .map_err(|_| Error::Config(format!("filter value {s:?} is neither a number nor 'none'")))?;
        FilterParams::active(f)
    }
}

/// `diag(√(1−f), √f)`.
pub fn filter_operator(f: FilterParams) -> Result<Operator2> {
    match f {
        FilterParams::Off => Err(Error::domain("f", f64::NAN, "filter is off")),
        FilterParams::Active(v) => {
            FilterParams::active(v)?;
            Ok(op((1.0 - v).sqrt(), 0.0, 0.0, v.sqrt()))
        }
    }
}

/// Output of [`evolve`]: the normalized five-mode state and the filter
/// success probability (1 when the filter is off).
#[derive(Debug, Clone)]
pub struct Evolved {
    pub rho: DensityMatrix,
    pub z: f64,
}

/// GAD on mode `A`, then the filter on `A` and division by its success
/// probability `Z`.
pub fn evolve(psi5: &PureState, g: GadParams, f: FilterParams) -> Result<Evolved> {
    if psi5.labels() != ModeLabel::ALL {
        return Err(Error::Label(format!(
            "evolution expects modes (A, B1, B2, C1, C2), got {:?}",
            psi5.labels()
        )));
    }
    let rho = apply_single_qubit_kraus(&psi5.to_density(), &gad_kraus(g), ModeLabel::A)?;
    match f {
        FilterParams::Off => Ok(Evolved { rho, z: 1.0 }),
        FilterParams::Active(_) => {
            let m = KrausSet::non_trace_preserving(vec![filter_operator(f)?]);
            let filtered = apply_single_qubit_kraus(&rho, &m, ModeLabel::A)?;
            let z = filtered.trace();
            if z <= MIN_FILTER_WEIGHT {
                return Err(Error::FilterAnnihilation { z });
            }
            let (rho, z) = filtered.normalize()?;
            Ok(Evolved { rho, z })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::CMatrix;

    fn qubit(m00: f64, m01: Complex64, m11: f64) -> DensityMatrix {
        let m = CMatrix::from_row_slice(2, 2, &[re(m00), m01, m01.conj(), re(m11)]);
        DensityMatrix::new(m, vec![ModeLabel::A]).unwrap()
    }

    #[test]
    fn gad_is_complete() {
        for (r, p) in [(0.0, 0.0), (0.3, 0.7), (1.0, 1.0), (0.5, 0.0)] {
            let k = gad_kraus(GadParams::new(r, p).unwrap());
            assert!(k.completeness_deviation() < 1e-15);
            assert_eq!(k.ops().len(), 4);
        }
    }

    #[test]
    fn zero_strength_is_identity() {
        let rho = qubit(0.3, Complex64::new(0.2, -0.1), 0.7);
        let out = apply_single_qubit_kraus(
            &rho,
            &gad_kraus(GadParams::new(0.0, 0.37).unwrap()),
            ModeLabel::A,
        )
        .unwrap();
        assert!((out.entries() - rho.entries()).camax() < 1e-15);
    }

    #[test]
    fn p_one_drops_excitation_operators() {
        let k = gad_kraus(GadParams::new(0.6, 1.0).unwrap());
        assert_eq!(k.ops()[2], Operator2::zeros());
        assert_eq!(k.ops()[3], Operator2::zeros());
    }

    #[test]
    fn full_inverted_relaxation() {
        let rho = qubit(0.8, Complex64::new(0.1, 0.3), 0.2);
        let out = apply_single_qubit_kraus(
            &rho,
            &gad_kraus(GadParams::new(1.0, 0.0).unwrap()),
            ModeLabel::A,
        )
        .unwrap();
        assert!(out.entry(0, 0).norm() < 1e-15);
        assert!(out.entry(0, 1).norm() < 1e-15);
        assert!((out.entry(1, 1).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gad_params_domain() {
        assert!(GadParams::new(1.1, 0.5).is_err());
        assert!(GadParams::new(0.5, -0.1).is_err());
    }

    #[test]
    fn bath_zero_storage_time() {
        let b = BathParams::new(0.7, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(gad_from_bath(&b).unwrap().r, 0.0);
        assert_eq!(gad_from_bath_thermal(&b).unwrap().r, 0.0);
    }

    #[test]
    fn bath_mixing_parameter() {
        // 1 / (1 + e^-1) = 0.731058578630004879
        let b = BathParams::new(0.0, 1.0, 1.0, 1.0).unwrap();
        assert!((gad_from_bath(&b).unwrap().p - 0.731_058_578_630_004_9).abs() < 1e-15);
        let hot = BathParams::new(0.0, 1.0, 1.0, 1e12).unwrap();
        assert!((gad_from_bath(&hot).unwrap().p - 0.5).abs() < 1e-12);
    }

    #[test]
    fn literal_rate_is_negative() {
        let b = BathParams::new(0.1, 2.0, 1.0, 1.0).unwrap();
        match gad_from_bath(&b) {
            Err(Error::FormulaDomain { gamma }) => {
                // [2/(e^-1 - 1) + 1] * 0.1
                let expected = (2.0 / ((-1.0f64).exp() - 1.0) + 1.0) * 0.1;
                assert!((gamma - expected).abs() < 1e-15);
                assert!(gamma < 0.0);
            }
            other => panic!("expected FormulaDomain, got {other:?}"),
        }
    }

    #[test]
    fn thermal_rate_is_coth() {
        let b = BathParams::new(0.1, 2.0, 1.0, 1.0).unwrap();
        let g = gad_from_bath_thermal(&b).unwrap();
        let gamma = 0.1 / (0.5f64).tanh();
        assert!((g.r - (1.0 - (-gamma * 2.0).exp())).abs() < 1e-15);
    }

    #[test]
    fn filter_operator_values() {
        let m = filter_operator(FilterParams::active(0.7).unwrap()).unwrap();
        assert!((m[(0, 0)].re - 0.3f64.sqrt()).abs() < 1e-15);
        assert!((m[(1, 1)].re - 0.7f64.sqrt()).abs() < 1e-15);
        assert_eq!(m[(0, 1)], re(0.0));
        let half = filter_operator(FilterParams::active(0.5).unwrap()).unwrap();
        assert!((half - Operator2::identity() * re(0.5f64.sqrt())).camax() < 1e-15);
    }

    #[test]
    fn filter_domain() {
        assert!(FilterParams::active(0.0).is_err());
        assert!(FilterParams::active(1.0).is_err());
        assert!(filter_operator(FilterParams::Off).is_err());
    }

    #[test]
    fn strong_filter_projects_on_one() {
        let m = filter_operator(FilterParams::active(1.0 - 1e-12).unwrap()).unwrap();
        let scaled = m / m[(1, 1)];
        assert!(scaled[(0, 0)].norm() < 1e-5);
    }

    #[test]
    fn filter_parse() {
        assert_eq!("none".parse::<FilterParams>().unwrap(), FilterParams::Off);
        assert_eq!("0.8".parse::<FilterParams>().unwrap(), FilterParams::Active(0.8));
        assert!("1.5".parse::<FilterParams>().is_err());
        assert!("abc".parse::<FilterParams>().is_err());
    }

    #[test]
    fn evolve_rejects_wrong_register() {
        let psi = PureState::basis(vec![ModeLabel::A, ModeLabel::B1], 0).unwrap();
        assert!(evolve(&psi, GadParams::new(0.1, 1.0).unwrap(), FilterParams::Off).is_err());
    }

    #[test]
    fn filter_annihilation() {
        // every weight on |1>_A, and a filter that nearly removes |1>
        let psi = PureState::basis(ModeLabel::ALL.to_vec(), 16).unwrap();
        let err = evolve(
            &psi,
            GadParams::new(0.0, 1.0).unwrap(),
            FilterParams::Active(1e-18),
        );
        assert!(matches!(err, Err(Error::FilterAnnihilation { .. })));
    }
}
