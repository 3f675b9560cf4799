use std::f64::consts::{PI, SQRT_2, TAU};

use ontolab_core::quantum::{
    chsh_closed_form, chsh_expectation, chsh_optimal_value, clone_output, joint_outcome_distribution,
    orthogonal_complement, BlochVector, ChshSetting, ProjectiveMeasurement, QuantumState,
};
use proptest::prelude::*;

fn bloch() -> impl Strategy<Value = BlochVector> {
    (0.0..std::f64::consts::PI, 0.0..2.0 * std::f64::consts::PI)
        .prop_map(|(t, p)| BlochVector::from_angles(t, p))
}

fn two_qubit_state() -> impl Strategy<Value = QuantumState> {
    proptest::collection::vec(-1.0..1.0f64, 8).prop_filter_map("zero vector", |v| {
        let amps = (0..4)
            .map(|i| ontolab_core::quantum::C64::new(v[2 * i], v[2 * i + 1]))
            .collect();
        QuantumState::normalized(amps).ok()
    })
}

proptest! {
    #[test]
    fn born_distribution_is_normalized(t in 0.0..PI, p in 0.0..TAU, n in bloch()) {
        let psi = QuantumState::from_bloch_angles(t, p);
        let d = ProjectiveMeasurement::along(&n).distribution(&psi).unwrap();
        prop_assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(d.iter().all(|&x| x >= -1e-15));
    }

    #[test]
    fn tsirelson_bound_holds(psi in two_qubit_state(), a0 in bloch(), a1 in bloch(), b0 in bloch(), b1 in bloch()) {
        let v = chsh_expectation(&psi, &ChshSetting::new([a0, a1], [b0, b1])).unwrap();
        prop_assert!(v.abs() <= 2.0 * SQRT_2 + 1e-9);
    }

    #[test]
    fn joint_distribution_is_normalized(psi in two_qubit_state(), a in bloch(), b in bloch()) {
        let p = joint_outcome_distribution(&psi, &a, &b).unwrap();
        let total: f64 = p.iter().flatten().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn clone_output_has_schmidt_weights(t in 0.01..3.13f64, p in 0.0..TAU) {
        let psi = QuantumState::from_bloch_angles(t, p);
        let out = clone_output(&QuantumState::zero(), &QuantumState::one(), &psi).unwrap();
        let a = out.amplitudes();
        prop_assert!((a[0].norm_sqr() - psi.amplitudes()[0].norm_sqr()).abs() < 1e-12);
        prop_assert!(a[1].norm() < 1e-15 && a[2].norm() < 1e-15);
    }

    #[test]
    fn orthogonal_complement_is_orthogonal(t in 0.0..PI, p in 0.0..TAU) {
        let phi = QuantumState::from_bloch_angles(t, p);
        let perp = orthogonal_complement(&phi).unwrap();
        prop_assert!(phi.overlap(&perp).unwrap() < 1e-24);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // the numeric maximiser is the oracle for the closed form
    #[test]
    fn closed_form_matches_numeric_maximum(alpha_sq in 0.02..0.98f64) {
        let psi = QuantumState::schmidt_real(alpha_sq).unwrap();
        let opt = chsh_optimal_value(&psi).unwrap();
        prop_assert!((opt.numeric_value - chsh_closed_form(alpha_sq)).abs() < 1e-9);
        let attained = chsh_expectation(&psi, &opt.setting).unwrap();
        prop_assert!((attained - opt.value).abs() < 1e-9);
    }
}

#[test]
fn cloning_plus_gives_phi_plus() {
    let out = clone_output(&QuantumState::zero(), &QuantumState::one(), &QuantumState::plus()).unwrap();
    assert!(out.same_ray(&QuantumState::phi_plus()));
    let v = chsh_expectation(&out, &ChshSetting::standard()).unwrap();
    assert!((v - 2.0 * SQRT_2).abs() < 1e-12);
}
