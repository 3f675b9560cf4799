use std::path::Path;

use ontolab::fixtures::{self, model_fixture_text, model_fixtures, table_fixtures};
use ontolab::format::{
    model_from_str, model_to_string, table_from_str, table_to_string, transition_from_str,
    transition_to_string,
};
use ontolab_core::ontic::{EpistemicState, OnticSpace, OntologicalModel, ResponseFunction, TransitionMatrix};
use ontolab_core::quantum::{ProjectiveMeasurement, QuantumState};
use proptest::prelude::*;

fn shipped(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn shipped_fixtures_match_their_generators() {
    for (name, model) in model_fixtures(false) {
        assert!(shipped(name) == model_fixture_text(&model), "{name} is stale");
        assert_eq!(model_from_str(&shipped(name)).unwrap(), model, "{name}");
    }
    for (name, table, _) in table_fixtures() {
        assert_eq!(shipped(name), table_to_string(&table), "{name} is stale");
    }
    assert_eq!(shipped(fixtures::SEARCH_EXAMPLE.0), fixtures::SEARCH_EXAMPLE.1);
}

#[test]
fn shipped_tables_parse_to_their_types() {
    for (name, table, expected) in table_fixtures() {
        let parsed = table_from_str(&shipped(name)).unwrap();
        assert_eq!(parsed, table);
        assert_eq!(ontolab_core::composite::classify(&parsed).tag.as_str(), expected);
    }
}

prop_compose! {
    fn arbitrary_model()(
        labels in 1usize..6,
        seeds in prop::collection::vec((0.0..1.0f64, 0.0..1.0f64, 0.0..6.3f64), 1..4),
        raw_mu in prop::collection::vec(prop::collection::vec(0.0..1.0f64, 6), 4),
        raw_xi in prop::collection::vec(0.0..1.0f64, 6),
        epsilon in prop::option::of(1e-15..1e-3f64),
    ) -> OntologicalModel {
        let names: Vec<String> = (0..labels).map(|i| format!("l{i}")).collect();
        let mut model = OntologicalModel::new(2, OnticSpace::new(names).unwrap()).with_born_tolerance(1e-3);
        if let Some(e) = epsilon {
            model = model.with_support_epsilon(e);
        }
        for (k, (t, u, p)) in seeds.iter().enumerate() {
            let state = QuantumState::from_bloch_angles(t * std::f64::consts::PI, *p);
            let mut w: Vec<f64> = raw_mu[k][..labels].to_vec();
            // some exact zeros to exercise the sparse encoding
            if *u < 0.5 {
                w[0] = 0.0;
            }
            let total: f64 = w.iter().sum::<f64>().max(1e-9);
            let w = w.iter().map(|x| x / total).collect();
            model.add_preparation(&format!("p{k}"), state, EpistemicState::unchecked(w)).unwrap();
        }
        let rows = raw_xi[..labels].iter().map(|&x| vec![x, 1.0 - x]).collect();
        model.add_measurement("Z", ProjectiveMeasurement::pauli_z(), ResponseFunction::unchecked(rows)).unwrap();
        model
    }
}

proptest! {
    #[test]
    fn models_round_trip_bit_exactly(model in arbitrary_model(), pretty in any::<bool>()) {
        let text = model_to_string(&model, pretty);
        let back = model_from_str(&text).unwrap();
        for (a, b) in model.preparations().iter().zip(back.preparations()) {
            let bits = |w: &[f64]| w.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
            prop_assert_eq!(bits(a.mu.weights()), bits(b.mu.weights()));
            prop_assert_eq!(a.state.amplitudes(), b.state.amplitudes());
        }
        prop_assert_eq!(&back, &model);
        prop_assert_eq!(model_to_string(&back, pretty), text);
    }

    #[test]
    fn transitions_round_trip(raw in prop::collection::vec(prop::collection::vec(0.01..1.0f64, 3), 3)) {
        let rows = raw
            .iter()
            .map(|r| {
                let t: f64 = r.iter().sum();
                r.iter().map(|x| x / t).collect()
            })
            .collect();
        let t = TransitionMatrix::new(rows).unwrap();
        prop_assert_eq!(transition_from_str(&transition_to_string(&t)).unwrap(), t);
    }
}

#[test]
fn unknown_keys_are_rejected_everywhere() {
    let text = shipped("psi_complete.json").replacen("\"dimension\"", "\"colour\": 1, \"dimension\"", 1);
    let err = model_from_str(&text).unwrap_err();
    assert_eq!(err.violations().len(), 1);
    assert_eq!(err.violations()[0].path, "/colour");
}
