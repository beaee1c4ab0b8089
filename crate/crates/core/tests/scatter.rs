use std::f64::consts::PI;

use hellmann::model::ApproxScheme;
use hellmann::oracle::numerov::scattering_wave;
use hellmann::oracle::{numeric_phase, SolverConfig};
use hellmann::scatter::{
    asymptotic_amplitude, phase_shift, phase_shift_with, reduce_mod_pi, scatter_state, NuSign,
};
use hellmann::PotentialParams;
use proptest::prelude::*;

fn reference() -> PotentialParams {
    PotentialParams::natural(1.0, 0.5, 0.1).unwrap()
}

fn mod_pi_distance(x: f64, y: f64) -> f64 {
    reduce_mod_pi(x - y).0.abs()
}

#[test]
fn golden_point() {
    let p = reference();
    let st = scatter_state(&p, 1.0, 0).unwrap();
    assert!((st.kappa.re - 220f64.sqrt()).abs() < 1e-12);
    assert!((st.capital_lambda2.im - 14.491_376_746_189_438).abs() < 1e-12);
    assert!(st.outside_derivation_regime);
    let ps = phase_shift(&p, 1.0, 0).unwrap();
    assert!((ps.delta - 1.335_947_269_965_653_4).abs() < 1e-10);
    assert!((ps.components[0] - 70.109_491_801_328_83).abs() < 1e-9);
    let amp = asymptotic_amplitude(&p, 1.0, 0).unwrap();
    assert!((amp - 0.043_522_768_395_480_12).abs() < 1e-12);
}

#[test]
fn conjugation_relations_with_real_capital_lambda() {
    let p = PotentialParams::natural(1.0, -3.0, 0.1).unwrap();
    for (e, ell) in [(0.1, 0), (0.2, 1), (0.05, 2)] {
        let st = scatter_state(&p, e, ell).unwrap();
        assert!(!st.outside_derivation_regime && !st.evanescent);
        assert_eq!(st.capital_lambda2.im, 0.0);
        let [x1, x2, x3] = st.xi;
        assert!((x3 - x1 - x2.conj()).norm() <= 1e-12);
        assert!((x3 - x2 - x1.conj()).norm() <= 1e-12);
    }
}

#[test]
fn evanescent_channels_are_rejected() {
    let p = PotentialParams::natural(-1.0, 0.0, 0.5).unwrap();
    // κ² = s(a + E/λ)/λ − ℓ(ℓ+1) < 0
    let err = phase_shift(&p, 0.1, 3).unwrap_err();
    assert!(matches!(err, hellmann::Error::Evanescent(_)));
    assert!(phase_shift(&reference(), -1.0, 0).is_err());
}

#[test]
fn reversing_nu_negates_the_phase() {
    let p = reference();
    for (e, ell) in [(0.5, 0), (1.0, 1), (3.0, 2)] {
        let out = phase_shift_with(&p, e, ell, NuSign::Outgoing).unwrap();
        let inc = phase_shift_with(&p, e, ell, NuSign::Incoming).unwrap();
        assert!(mod_pi_distance(inc.delta, -out.delta) <= 1e-10);
    }
}

#[test]
fn amplitude_uses_gamma_two_mu() {
    let p = reference();
    for ell in 0..4 {
        let a = asymptotic_amplitude(&p, 2.0, ell).unwrap();
        assert!(a > 0.0 && a.is_finite());
    }
}

#[test]
fn closed_form_reproduces_the_integrated_wave() {
    let p = reference();
    let cfg = SolverConfig::default();
    for (e, ell) in [(1.0, 0), (0.5, 1), (2.0, 2)] {
        let ps = phase_shift(&p, e, ell).unwrap();
        let amp = asymptotic_amplitude(&p, e, ell).unwrap();
        let k = scatter_state(&p, e, ell).unwrap().wavenumber(p.lambda);
        let wavelength = 2.0 * PI / k;
        let r_end = (45.0 / p.lambda).max(50.0 * wavelength) + wavelength;
        let trace =
            scattering_wave(&p, e, ell, ApproxScheme::PekerisCentrifugal, &cfg, r_end).unwrap();
        let worst = trace
            .r
            .iter()
            .zip(&trace.u)
            .filter(|(r, _)| **r >= r_end - wavelength)
            .map(|(r, u)| (u - amp * (k * r - PI * ell as f64 / 2.0 + ps.delta_raw).sin()).abs())
            .fold(0.0, f64::max);
        assert!(worst / amp <= 1e-2, "E={e} l={ell}: {}", worst / amp);
    }
}

#[test]
fn closed_form_matches_fitted_phases() {
    let p = reference();
    let cfg = SolverConfig::default();
    for (e, ell) in [(0.3, 0), (1.0, 0), (4.0, 0), (1.0, 1), (2.0, 2), (5.0, 3)] {
        let fit = numeric_phase(&p, e, ell, ApproxScheme::PekerisCentrifugal, &cfg).unwrap();
        let ps = phase_shift(&p, e, ell).unwrap();
        assert!(
            mod_pi_distance(ps.delta, fit.delta) <= 1e-2,
            "E={e} l={ell}"
        );
    }
}

#[test]
fn free_s_wave_has_no_phase() {
    let p = PotentialParams::natural(0.0, 0.0, 0.1).unwrap();
    for e in [0.2, 1.0, 3.0] {
        let ps = phase_shift(&p, e, 0).unwrap();
        assert!(mod_pi_distance(ps.delta, 0.0) <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phase_is_continuous_in_energy(e0 in 0.2f64..5.0, ell in 0u32..4) {
        let p = reference();
        let mut prev = phase_shift(&p, e0, ell).unwrap().delta;
        for i in 1..=40 {
            let d = phase_shift(&p, e0 + 1e-3 * i as f64, ell).unwrap();
            prop_assert!(d.delta.is_finite());
            prop_assert!(mod_pi_distance(d.delta, prev) <= 1e-2);
            prev = d.delta;
        }
    }

    #[test]
    fn conjugation_relations_whenever_capital_lambda_is_real(
        b in -5.0f64..-0.5, e in 0.01f64..0.04, ell in 0u32..3,
    ) {
        let p = PotentialParams::natural(1.0, b, 0.1).unwrap();
        let st = scatter_state(&p, e, ell).unwrap();
        prop_assume!(!st.outside_derivation_regime);
        let [x1, x2, x3] = st.xi;
        prop_assert!((x3 - x1 - x2.conj()).norm() <= 1e-12);
        prop_assert!((x3 - x2 - x1.conj()).norm() <= 1e-12);
    }
}
