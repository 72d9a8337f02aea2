use super::X_FORM_TOL;
use crate::error::{Error, Result};
use crate::qcore::{as_x_state, partial_trace, DensityMatrix, PureState, XState};

/// Genuine tripartite concurrence of a pure three-qubit state,
/// `min_k √(2(1 − Tr ρ_k²))` over the three single-qubit cuts.
pub fn gtc_pure(psi: &PureState) -> Result<f64> {
    if psi.num_qubits() != 3 {
        return Err(Error::Dimension(format!(
            "concurrence needs 3 qubits, got {}",
            psi.num_qubits()
        )));
    }
    let rho = psi.to_density();
    let mut best = f64::INFINITY;
    for &label in psi.labels() {
        let purity = partial_trace(&rho, &[label])?.purity();
        best = best.min((2.0 * (1.0 - purity)).max(0.0).sqrt());
    }
    Ok(best)
}

/// Closed-form genuine tripartite concurrence of an X state,
/// `2·maxᵢ max{0, |wᵢ| − Σ_{j≠i} √(μⱼνⱼ)}`.
pub fn gtc_x(x: &XState) -> f64 {
    let roots: Vec<f64> = (0..4).map(|j| (x.mu[j] * x.nu[j]).max(0.0).sqrt()).collect();
    let total: f64 = roots.iter().sum();
    (0..4)
        .map(|i| (x.w[i].norm() - (total - roots[i])).max(0.0))
        .fold(0.0, f64::max)
        * 2.0
}

/// Position of a qubit with no coherence (every entry that flips it is at
/// most `tol`), if any.
///
/// Such a state is a mixture of products `|b⟩⟨b| ⊗ ρ_b`, hence separable
/// across that qubit's cut and not genuinely entangled.
pub fn classical_qubit(rho: &DensityMatrix, tol: f64) -> Option<usize> {
    (0..rho.num_qubits()).find(|&q| qubit_is_classical(rho, q, tol))
}

/// Whether every entry that flips qubit `q` (0 = most significant) is at
/// most `tol` in modulus.
pub fn qubit_is_classical(rho: &DensityMatrix, q: usize, tol: f64) -> bool {
    let mask = 1 << (rho.num_qubits() - 1 - q);
    (0..rho.dim()).all(|i| {
        (0..rho.dim())
            .filter(|j| (i ^ j) & mask != 0)
            .all(|j| rho.entry(i, j).norm() <= tol)
    })
}

/// Genuine tripartite concurrence of a normalized three-qubit state.
///
/// X states use [`gtc_x`]. Otherwise a qubit without coherence certifies
/// `C = 0`; any other state fails with [`Error::NotXForm`], since no closed
/// form is available.
pub fn genuine_concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 8 {
        return Err(Error::Dimension(format!(
            "concurrence needs 3 qubits, got dimension {}",
            rho.dim()
        )));
    }
    match as_x_state(rho, X_FORM_TOL) {
        Ok(x) => Ok(gtc_x(&x)),
        Err(e @ Error::NotXForm { .. }) => match classical_qubit(rho, X_FORM_TOL) {
            Some(_) => Ok(0.0),
            None => Err(e),
        },
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{ModeLabel, C64};

    fn labels() -> Vec<ModeLabel> {
        vec![ModeLabel::A, ModeLabel::B1, ModeLabel::C1]
    }

    fn alpha_ghz(alpha: f64) -> PureState {
        let mut amps = vec![C64::new(0.0, 0.0); 8];
        amps[0] = C64::new(alpha, 0.0);
        amps[7] = C64::new((1.0 - alpha * alpha).sqrt(), 0.0);
        PureState::new(amps, labels()).unwrap()
    }

    #[test]
    fn pure_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((gtc_pure(&alpha_ghz(h)).unwrap() - 1.0).abs() < 1e-12);
        assert!(gtc_pure(&alpha_ghz(1.0)).unwrap().abs() < 1e-12);
        assert!((gtc_pure(&alpha_ghz(0.2_f64.sqrt())).unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn w_state_concurrence() {
        // each single-qubit marginal is diag(2/3, 1/3)
        let t = C64::new(1.0 / 3.0_f64.sqrt(), 0.0);
        let mut amps = vec![C64::new(0.0, 0.0); 8];
        amps[1] = t;
        amps[2] = t;
        amps[4] = t;
        let w = PureState::new(amps, labels()).unwrap();
        let expected = (2.0 * (1.0 - 5.0 / 9.0_f64)).sqrt();
        assert!((gtc_pure(&w).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn x_examples() {
        let z = C64::new(0.0, 0.0);
        let ghz = XState::new([0.5, 0.0, 0.0, 0.0], [0.5, 0.0, 0.0, 0.0], [C64::new(0.5, 0.0), z, z, z]).unwrap();
        assert!((gtc_x(&ghz) - 1.0).abs() < 1e-15);
        let mixed = XState::new([0.125; 4], [0.125; 4], [z; 4]).unwrap();
        assert_eq!(gtc_x(&mixed), 0.0);
        let x = as_x_state(&alpha_ghz(0.2_f64.sqrt()).to_density(), 1e-12).unwrap();
        assert!((gtc_x(&x) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn classical_qubit_certificate() {
        // |0><0| ⊗ |Φ+><Φ+| is not X-shaped but has no coherence on qubit 0
        let mut e = crate::qcore::CMatrix::zeros(8, 8);
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            e[(i, j)] = C64::new(0.5, 0.0);
        }
        let rho = DensityMatrix::new(e, labels()).unwrap();
        assert!(as_x_state(&rho, 1e-12).is_err());
        assert_eq!(classical_qubit(&rho, 1e-12), Some(0));
        assert_eq!(genuine_concurrence(&rho).unwrap(), 0.0);
    }

    #[test]
    fn w_state_has_no_closed_form() {
        let t = C64::new(1.0 / 3.0_f64.sqrt(), 0.0);
        let mut amps = vec![C64::new(0.0, 0.0); 8];
        amps[1] = t;
        amps[2] = t;
        amps[4] = t;
        let rho = PureState::new(amps, labels()).unwrap().to_density();
        assert!(matches!(genuine_concurrence(&rho), Err(Error::NotXForm { .. })));
    }
}
