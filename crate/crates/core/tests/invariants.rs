use std::f64::consts::FRAC_1_SQRT_2;

use proptest::prelude::*;

use horizon_gtn::measures::{
    genuine_concurrence, gtc_pure, gtc_x, measure, svetlichny_bruteforce, svetlichny_value, MeasureSet,
    SearchConfig, S_MAX,
};
use horizon_gtn::noise::{evolve, gad_kraus, FilterParams, GadParams};
use horizon_gtn::qcore::{
    apply_single_qubit_kraus, as_x_state, partial_trace, tensor, CMatrix, DensityMatrix, ModeLabel, PureState,
    C64,
};
use horizon_gtn::reduced::{closed_form, pipeline, ModelParams, Subsystem};
use horizon_gtn::spacetime::{dilate_state, InitialStateParams, SpacetimeParams};
use horizon_gtn::sweep::{figure_preset, run_sweep, to_csv_string, ASYMPTOTIC_T, PRESET_NAMES};

use ModeLabel::*;

const X_SUBSYSTEMS: [Subsystem; 4] = [Subsystem::AB1C1, Subsystem::AB2C2, Subsystem::AB1C2, Subsystem::AB2C1];

fn random_density(labels: Vec<ModeLabel>, seed: &[f64]) -> DensityMatrix {
    let d = 1 << labels.len();
    let mut g = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let k = 2 * (i * d + j);
            g[(i, j)] = C64::new(seed[k % seed.len()], seed[(k + 1) % seed.len()]);
        }
    }
    let m = &g * g.adjoint() + CMatrix::identity(d, d) * C64::new(1e-3, 0.0);
    let tr = m.trace().re;
    DensityMatrix::new(m / C64::new(tr, 0.0), labels).unwrap()
}

fn model_params() -> impl Strategy<Value = ModelParams> {
    (
        0.0..=1.0f64,
        0.5..2.0f64,
        0.1..=20.0f64,
        0.0..=1.0f64,
        0.0..=1.0f64,
        prop_oneof![Just(None), (0.05..0.95f64).prop_map(Some)],
    )
        .prop_map(|(alpha, omega, ratio, r, p, f)| ModelParams {
            alpha,
            omega,
            temperature: omega / ratio,
            r,
            p,
            filter: f.map_or(FilterParams::Off, FilterParams::Active),
        })
}

fn swap_bob_charlie_qubits(rho: &DensityMatrix) -> DensityMatrix {
    // exchange the second and third qubits of an 8x8 matrix
    let perm = |i: usize| (i & 0b100) | ((i & 0b010) >> 1) | ((i & 0b001) << 1);
    let e = rho.entries();
    let swapped = CMatrix::from_fn(8, 8, |i, j| e[(perm(i), perm(j))]);
    DensityMatrix::new(swapped, rho.labels().to_vec()).unwrap()
}

fn phase(phi: f64) -> nalgebra::Matrix2<C64> {
    nalgebra::Matrix2::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::from_polar(1.0, phi))
}

fn quick_search() -> SearchConfig {
    SearchConfig {
        restarts: 30,
        ..Default::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tensor_is_associative(a in prop::collection::vec(-1.0..1.0f64, 8), b in prop::collection::vec(-1.0..1.0f64, 8), c in prop::collection::vec(-1.0..1.0f64, 8)) {
        let (ra, rb, rc) = (random_density(vec![A], &a), random_density(vec![B1], &b), random_density(vec![C1], &c));
        let left = tensor(&tensor(&ra, &rb).unwrap(), &rc).unwrap();
        let right = tensor(&ra, &tensor(&rb, &rc).unwrap()).unwrap();
        prop_assert!((left.entries() - right.entries()).camax() <= 1e-14);
    }

    #[test]
    fn partial_trace_recovers_factor(a in prop::collection::vec(-1.0..1.0f64, 32), b in prop::collection::vec(-1.0..1.0f64, 8)) {
        let ra = random_density(vec![A, B2], &a);
        let rb = random_density(vec![B1], &b);
        let back = partial_trace(&tensor(&ra, &rb).unwrap(), &[A, B2]).unwrap();
        prop_assert!((back.entries() - ra.entries()).camax() <= 1e-12);
    }

    #[test]
    fn kraus_preserves_trace_and_positivity(seed in prop::collection::vec(-1.0..1.0f64, 16), r in 0.0..=1.0f64, p in 0.0..=1.0f64) {
        let rho = random_density(vec![A, C1], &seed);
        let out = apply_single_qubit_kraus(&rho, &gad_kraus(GadParams::new(r, p).unwrap()), C1).unwrap();
        prop_assert!((out.trace() - 1.0).abs() <= 1e-12);
        prop_assert!(out.min_eigenvalue() >= -1e-10);
    }

    #[test]
    fn kraus_completeness(r in 0.0..=1.0f64, p in 0.0..=1.0f64) {
        prop_assert!(gad_kraus(GadParams::new(r, p).unwrap()).completeness_deviation() <= 1e-12);
    }

    #[test]
    fn dilation_depends_on_ratio_only(alpha in 0.0..=1.0f64, omega in 0.1..5.0f64, t in 0.01..5.0f64, lambda in 0.1..10.0f64) {
        let init = InitialStateParams::new(alpha).unwrap();
        let a = dilate_state(&init, &SpacetimeParams::new(omega, t).unwrap());
        let b = dilate_state(&init, &SpacetimeParams::new(lambda * omega, lambda * t).unwrap());
        prop_assert!((a.amplitudes() - b.amplitudes()).camax() <= 1e-13);
    }

    #[test]
    fn dilation_coefficients(alpha in 0.0..=1.0f64, x in 0.05..30.0f64) {
        let psi = dilate_state(&InitialStateParams::new(alpha).unwrap(), &SpacetimeParams::new(x, 1.0).unwrap());
        let expect = [
            (0b00000, alpha / ((-x).exp() + 1.0)),
            (0b00011, alpha / (x.exp() + (-x).exp() + 2.0).sqrt()),
            (0b01100, alpha / (x.exp() + (-x).exp() + 2.0).sqrt()),
            (0b01111, alpha / (x.exp() + 1.0)),
        ];
        for (i, v) in expect {
            prop_assert!((psi.amplitude(i).re - v).abs() <= 1e-13);
        }
    }

    #[test]
    fn evolution_is_valid_and_symmetric(mp in model_params()) {
        let psi = dilate_state(&mp.initial().unwrap(), &mp.spacetime().unwrap());
        let out = evolve(&psi, mp.gad().unwrap(), mp.filter).unwrap();
        out.rho.validate().unwrap();
        prop_assert!((out.rho.trace() - 1.0).abs() <= 1e-12);
        prop_assert!(out.z > 0.0 && out.z <= 1.0 + 1e-12);

        // the channel acts on A only, so it commutes with exchanging Bob and Charlie
        let swapped_in = dilate_state(&mp.initial().unwrap(), &mp.spacetime().unwrap())
            .to_density()
            .relabel(ModeLabel::swap_bob_charlie)
            .unwrap();
        let k = gad_kraus(mp.gad().unwrap());
        let mut before = apply_single_qubit_kraus(&swapped_in, &k, A).unwrap();
        if mp.filter != FilterParams::Off {
            let m = horizon_gtn::noise::KrausSet::non_trace_preserving(vec![horizon_gtn::noise::filter_operator(mp.filter).unwrap()]);
            before = apply_single_qubit_kraus(&before, &m, A).unwrap().normalize().unwrap().0;
        }
        let after = out.rho.relabel(ModeLabel::swap_bob_charlie).unwrap();
        prop_assert!((before.entries() - after.entries()).camax() <= 1e-12);
    }

    #[test]
    fn half_filter_equals_no_filter(mut mp in model_params()) {
        mp.filter = FilterParams::Off;
        let off = horizon_gtn::reduced::evolve_model(&mp).unwrap();
        mp.filter = FilterParams::Active(0.5);
        let half = horizon_gtn::reduced::evolve_model(&mp).unwrap();
        prop_assert!((off.rho.entries() - half.rho.entries()).camax() <= 1e-12);
    }

    #[test]
    fn reduced_states_have_unit_trace(mp in model_params()) {
        for sub in Subsystem::ALL {
            let (rho, _) = pipeline(&mp, sub).unwrap();
            prop_assert!((rho.trace() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn x_extraction_round_trips(mp in model_params()) {
        for sub in X_SUBSYSTEMS {
            let (rho, _) = pipeline(&mp, sub).unwrap();
            let x = as_x_state(&rho, 1e-12).unwrap();
            prop_assert!((x.to_matrix() - rho.entries()).camax() <= 1e-12);
        }
    }

    #[test]
    fn closed_forms_track_pipeline_where_they_hold(mp in model_params()) {
        for sub in X_SUBSYSTEMS {
            let (rho, _) = pipeline(&mp, sub).unwrap();
            let cf = closed_form(sub, &mp).unwrap();
            prop_assert!((rho.entries() - cf.entries()).camax() <= 1e-10);
        }
    }

    #[test]
    fn measures_stay_in_range(mp in model_params()) {
        for sub in Subsystem::ALL {
            let (rho, _) = pipeline(&mp, sub).unwrap();
            let m = measure(&rho, MeasureSet::BOTH, &quick_search()).unwrap();
            let (s, c) = (m.s.unwrap(), m.c.unwrap());
            prop_assert!((0.0..=S_MAX + 1e-9).contains(&s), "S = {s}");
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&c), "C = {c}");
        }
    }

    #[test]
    fn bob_charlie_swap_leaves_measures_unchanged(mp in model_params()) {
        for sub in Subsystem::ALL {
            let (rho, _) = pipeline(&mp, sub).unwrap();
            let sw = swap_bob_charlie_qubits(&rho);
            let a = measure(&rho, MeasureSet::BOTH, &quick_search()).unwrap();
            let b = measure(&sw, MeasureSet::BOTH, &quick_search()).unwrap();
            prop_assert!((a.s.unwrap() - b.s.unwrap()).abs() <= 1e-9);
            prop_assert!((a.c.unwrap() - b.c.unwrap()).abs() <= 1e-9);
        }
    }

    #[test]
    fn local_phases_leave_measures_unchanged(mp in model_params(), phi in 0.0..std::f64::consts::TAU, q in 0usize..3) {
        for sub in [Subsystem::AB1C1, Subsystem::AB1C2, Subsystem::AB1B2] {
            let (rho, _) = pipeline(&mp, sub).unwrap();
            let target = rho.labels()[q];
            let rotated = rho.conjugate_local(&phase(phi), target).unwrap();
            let a = measure(&rho, MeasureSet::BOTH, &quick_search()).unwrap();
            let b = measure(&rotated, MeasureSet::BOTH, &quick_search()).unwrap();
            prop_assert!((a.s.unwrap() - b.s.unwrap()).abs() <= 1e-9);
            prop_assert!((a.c.unwrap() - b.c.unwrap()).abs() <= 1e-9);
        }
    }

    #[test]
    fn rank_one_x_states_match_pure_formula(pair in 0usize..4, theta in 0.0..std::f64::consts::FRAC_PI_2, phi in 0.0..std::f64::consts::TAU) {
        let mut amps = vec![C64::new(0.0, 0.0); 8];
        amps[pair] = C64::new(theta.cos(), 0.0);
        amps[7 - pair] = C64::from_polar(theta.sin(), phi);
        let psi = PureState::new(amps, vec![A, B1, C1]).unwrap();
        let x = as_x_state(&psi.to_density(), 1e-12).unwrap();
        prop_assert!((gtc_x(&x) - gtc_pure(&psi).unwrap()).abs() <= 1e-10);
    }

    #[test]
    fn concurrence_is_lipschitz_in_parameters(mp in model_params(), which in 0usize..3) {
        let h = 1e-4;
        let mut moved = mp;
        match which {
            0 => moved.r = (mp.r + h).min(1.0),
            1 => moved.p = (mp.p + h).min(1.0),
            _ => moved.alpha = (mp.alpha + h).min(1.0),
        }
        let delta = [moved.r - mp.r, moved.p - mp.p, moved.alpha - mp.alpha][which];
        for sub in X_SUBSYSTEMS {
            let c0 = genuine_concurrence(&pipeline(&mp, sub).unwrap().0).unwrap();
            let c1 = genuine_concurrence(&pipeline(&moved, sub).unwrap().0).unwrap();
            prop_assert!((c1 - c0).abs() <= 10.0 * delta.abs() + 1e-12, "{sub}: {c0} -> {c1}");
        }
    }
}

#[test]
fn brute_force_phase_invariance() {
    let mp = ModelParams {
        temperature: 0.7,
        r: 0.3,
        p: 0.9,
        filter: FilterParams::Active(0.65),
        ..Default::default()
    };
    let cfg = SearchConfig::default();
    let (rho, _) = pipeline(&mp, Subsystem::AB1C1).unwrap();
    let base = svetlichny_bruteforce(&rho, &cfg).unwrap().value;
    for (q, phi) in [(0, 0.4), (1, 2.2), (2, 5.1)] {
        let rotated = rho.conjugate_local(&phase(phi), rho.labels()[q]).unwrap();
        let v = svetlichny_bruteforce(&rotated, &cfg).unwrap().value;
        assert!((v - base).abs() <= 1e-9, "qubit {q}: {v} vs {base}");
    }
    let swapped = svetlichny_bruteforce(&swap_bob_charlie_qubits(&rho), &cfg).unwrap().value;
    assert!((swapped - base).abs() <= 1e-9);
}

#[test]
fn zero_temperature_reduction_is_ghz_like() {
    for alpha in [0.0, 0.3, FRAC_1_SQRT_2, 1.0] {
        let psi = dilate_state(&InitialStateParams::new(alpha).unwrap(), &SpacetimeParams::new(1.0, 0.0).unwrap());
        let rho = partial_trace(&psi.to_density(), &[A, B1, C1]).unwrap();
        let beta = (1.0 - alpha * alpha).sqrt();
        let mut expect = CMatrix::zeros(8, 8);
        expect[(0, 0)] = C64::new(alpha * alpha, 0.0);
        expect[(0, 7)] = C64::new(alpha * beta, 0.0);
        expect[(7, 0)] = C64::new(alpha * beta, 0.0);
        expect[(7, 7)] = C64::new(beta * beta, 0.0);
        assert!((rho.entries() - expect).camax() <= 1e-12);
    }
}

#[test]
fn diagonal_bookkeeping_without_noise() {
    for t in [0.0, 0.3, 1.0, 7.0, 1e3] {
        let mp = ModelParams {
            temperature: t,
            filter: FilterParams::Active(0.5),
            ..Default::default()
        };
        let (rho, _) = pipeline(&mp, Subsystem::AB1C1).unwrap();
        let diag: f64 = (0..8).map(|i| rho.entry(i, i).re).sum();
        assert!((diag - 1.0).abs() <= 1e-12);
    }
}

/// The two subsystems holding both of one observer's modes are not X-shaped:
/// Alice's qubit keeps no coherence there, and both measures still have
/// exact values.
#[test]
fn same_observer_pairs_are_not_x_shaped() {
    let mp = ModelParams {
        temperature: 1.0,
        r: 0.2,
        ..Default::default()
    };
    for sub in [Subsystem::AB1B2, Subsystem::AC1C2] {
        let (rho, _) = pipeline(&mp, sub).unwrap();
        assert!(as_x_state(&rho, 1e-12).is_err());
        assert_eq!(genuine_concurrence(&rho).unwrap(), 0.0);
        let exact = svetlichny_value(&rho, &SearchConfig::default()).unwrap();
        let searched = svetlichny_bruteforce(&rho, &SearchConfig::default()).unwrap();
        assert!((exact.value - searched.value).abs() <= 1e-9);
    }
}

#[test]
fn preset_csv_is_deterministic() {
    for name in ["fig2a", "fig4a", "fig7b"] {
        let spec = figure_preset(name).unwrap().spec;
        let a = to_csv_string(&run_sweep(&spec).unwrap());
        let b = to_csv_string(&run_sweep(&spec).unwrap());
        assert_eq!(a, b);
        assert!(!a.contains('\r'));
    }
}

#[test]
fn filtered_plateau_never_below_unfiltered() {
    for name in PRESET_NAMES {
        let spec = figure_preset(name).unwrap().spec;
        let filtered = spec.curves.iter().any(|c| matches!(c.filter, Some(FilterParams::Active(_))));
        if !filtered || !spec.measures.c || spec.fixed.p != 1.0 || spec.curves.iter().any(|c| c.p != Some(1.0)) {
            continue;
        }
        let sub = spec.subsystems[0];
        let plateau = |i: usize| {
            let mp = spec.curves[i].apply(&spec.fixed).with_temperature(ASYMPTOTIC_T);
            genuine_concurrence(&pipeline(&mp, sub).unwrap().0).unwrap()
        };
        assert!(plateau(1) >= plateau(0), "{name}");
    }
}
