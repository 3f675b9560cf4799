use std::f64::consts::{PI, SQRT_2};

use ontolab_core::epistemicity::{
    check_general_bound, check_symmetric_bound, general_bound_rhs, ontic_overlap, quantum_overlap,
};
use ontolab_core::ontic::OntologicalModel;
use ontolab_core::quantum::{ProjectiveMeasurement, QuantumState};
use ontolab_core::reference::{self, SpherePartition};
use proptest::prelude::*;

fn overlaps_bounded_by_born(model: &OntologicalModel) {
    for phi in model.preparations() {
        for psi in model.preparations() {
            let o = ontic_overlap(model, &phi.id, &psi.id).unwrap();
            let q = quantum_overlap(model, &phi.id, &psi.id).unwrap();
            assert!(
                o <= q + model.born_tolerance(),
                "{} {}: {o} > {q}",
                phi.id,
                psi.id
            );
            assert!(o >= 0.0);
        }
    }
}

#[test]
fn ontic_overlap_never_exceeds_quantum_overlap() {
    overlaps_bounded_by_born(&reference::psi_complete());
    overlaps_bounded_by_born(&reference::kochen_specker(5_000));
    overlaps_bounded_by_born(&reference::bell_model(2_000));
}

#[test]
fn rhs_is_symmetric_with_minimum_at_half() {
    let grid: Vec<f64> = (0..=1000).map(|i| i as f64 / 1000.0).collect();
    let mut argmin = 0.0;
    let mut min = f64::INFINITY;
    for &a in &grid {
        let r = general_bound_rhs(a);
        assert!((r - general_bound_rhs(1.0 - a)).abs() < 1e-12);
        if r < min {
            min = r;
            argmin = a;
        }
    }
    assert_eq!(argmin, 0.5);
    assert!((min - (2.0 - SQRT_2)).abs() < 1e-15);
}

#[test]
fn symmetric_check_agrees_with_general_check_at_half() {
    for i in 0..=1000 {
        let omega = i as f64 / 1000.0;
        let g = check_general_bound(0.5, omega, omega).unwrap();
        let s = check_symmetric_bound(omega, omega);
        assert_eq!(g.satisfied, s.satisfied, "omega = {omega}");
    }
}

/// `int over z > 0 of (p.l)^+ / pi` by midpoint quadrature in `(theta, phi)`.
fn ks_overlap_with_upper_hemisphere(p: [f64; 3]) -> f64 {
    let (nt, np) = (1000, 2000);
    let (dt, dp) = (PI / 2.0 / nt as f64, 2.0 * PI / np as f64);
    let mut acc = 0.0;
    for i in 0..nt {
        let t = (i as f64 + 0.5) * dt;
        for j in 0..np {
            let f = (j as f64 + 0.5) * dp;
            let l = [t.sin() * f.cos(), t.sin() * f.sin(), t.cos()];
            let d = p[0] * l[0] + p[1] * l[1] + p[2] * l[2];
            acc += d.max(0.0) * t.sin() * dt * dp;
        }
    }
    acc / PI
}

#[test]
fn ks_overlap_matches_quadrature_off_axis() {
    let theta = 1.0;
    let psi = QuantumState::from_bloch_angles(theta, 0.3);
    let preps = vec![("0".to_string(), QuantumState::zero()), ("psi".to_string(), psi)];
    let meas = vec![("Z".to_string(), ProjectiveMeasurement::pauli_z())];
    let model =
        reference::kochen_specker_for(SpherePartition::with_at_least(100_000), &preps, &meas).unwrap();
    let p = [
        theta.sin() * 0.3f64.cos(),
        theta.sin() * 0.3f64.sin(),
        theta.cos(),
    ];
    let oracle = ks_overlap_with_upper_hemisphere(p);
    assert!((oracle - (1.0 + theta.cos()) / 2.0).abs() < 1e-5);
    let o = ontic_overlap(&model, "0", "psi").unwrap();
    assert!((o - oracle).abs() < 1e-2, "{o} vs {oracle}");
}

proptest! {
    #[test]
    fn margin_is_rhs_minus_lhs(a in 0.001..0.999f64, o1 in 0.0..1.0f64, o2 in 0.0..1.0f64) {
        let v = check_general_bound(a, o1, o2).unwrap();
        prop_assert!((v.margin - (v.rhs - v.lhs)).abs() < 1e-15);
        prop_assert_eq!(v.satisfied, v.margin >= -1e-12);
    }
}
