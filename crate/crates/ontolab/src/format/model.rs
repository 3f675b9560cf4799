//! JSON model format.
//!
//! ```json
//! {"dimension": 2, "tolerance": 1e-6, "support_epsilon": 1e-12,
//!  "ontic_states": [{"id": "l0", "sector": "LOCAL_A"}, {"id": "l1"}],
//!  "preparations": {"0": {"ket": [[1.0, 0.0], [0.0, 0.0]], "mu": {"l0": 1.0}}},
//!  "measurements": {"Z": {"basis": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
//!                         "outcomes": ["0", "1"],
//!                         "xi": {"l0": [1.0, 0.0], "l1": [0.0, 1.0]}}}}
//! ```
//!
//! `mu` is sparse (absent labels carry no weight); `xi` must list every
//! label. `support_epsilon` and `outcomes` are optional and written only
//! when they differ from the defaults.

use serde_json::{Map, Value};

use ontolab_core::ontic::{
    EpistemicState, OnticSpace, OntologicalModel, ResponseFunction, Sector, TransitionMatrix,
};
use ontolab_core::quantum::{ProjectiveMeasurement, QuantumState};
use ontolab_core::tolerance;

use super::schema::{self, index, join, Checker};
use crate::error::FormatError;

pub fn model_from_str(text: &str) -> Result<OntologicalModel, FormatError> {
    model_from_value(&schema::parse(text)?)
}

pub fn model_from_value(doc: &Value) -> Result<OntologicalModel, FormatError> {
    let mut c = Checker::new();
    let model = read_model(&mut c, doc);
    c.finish(model)
}

fn read_model(c: &mut Checker, doc: &Value) -> Option<OntologicalModel> {
    let top = c.object(
        doc,
        "",
        &[
            "dimension",
            "tolerance",
            "ontic_states",
            "preparations",
            "measurements",
        ],
        &["support_epsilon"],
    )?;

    let dimension = top.get("dimension").and_then(|v| c.unsigned(v, "/dimension"));
    if let Some(d) = dimension {
        if d != 2 && d != 4 {
            c.report(
                "/dimension",
                format!("unsupported dimension {d}; expected 2 or 4"),
            );
        }
    }
    let dimension = dimension.filter(|d| *d == 2 || *d == 4);
    let born = positive(c, top.get("tolerance"), "/tolerance");
    let epsilon = match top.get("support_epsilon") {
        Some(v) => positive(c, Some(v), "/support_epsilon"),
        None => Some(tolerance::SUPPORT_EPSILON),
    };
    let space = top.get("ontic_states").and_then(|v| read_space(c, v));

    let preparations = top
        .get("preparations")
        .and_then(|v| read_preparations(c, v, dimension, space.as_ref()));
    let measurements = top
        .get("measurements")
        .and_then(|v| read_measurements(c, v, dimension, space.as_ref()));

    if !c.is_clean() {
        return None;
    }
    let mut model = OntologicalModel::new(dimension?, space?)
        .with_born_tolerance(born?)
        .with_support_epsilon(epsilon?);
    for (id, state, mu) in preparations? {
        model.add_preparation(&id, state, mu).ok()?;
    }
    for (id, m, xi) in measurements? {
        model.add_measurement(&id, m, xi).ok()?;
    }
    Some(model)
}

fn positive(c: &mut Checker, v: Option<&Value>, path: &str) -> Option<f64> {
    let x = c.number(v?, path)?;
    if !(x > 0.0 && x.is_finite()) {
        c.report(path, format!("expected a positive number, found {x}"));
        return None;
    }
    Some(x)
}

fn read_space(c: &mut Checker, v: &Value) -> Option<OnticSpace> {
    let items = c.array(v, "/ontic_states")?;
    if items.is_empty() {
        c.report("/ontic_states", "the ontic space is empty");
        return None;
    }
    let mut labels = Vec::with_capacity(items.len());
    let mut sectors = Vec::with_capacity(items.len());
    let mut seen = std::collections::HashSet::new();
    let mut ok = true;
    for (i, item) in items.iter().enumerate() {
        let path = index("/ontic_states", i);
        let Some(obj) = c.object(item, &path, &["id"], &["sector"]) else {
            ok = false;
            continue;
        };
        let id = obj.get("id").and_then(|v| c.string(v, &join(&path, "id")));
        let sector = match obj.get("sector") {
            None => Some(None),
            Some(s) => c
                .string(s, &join(&path, "sector"))
                .and_then(|s| match Sector::parse(s) {
                    Some(sec) => Some(Some(sec)),
                    None => {
                        c.report(&join(&path, "sector"), format!("unknown sector `{s}`"));
                        None
                    }
                }),
        };
        match (id, sector) {
            (Some(id), Some(sector)) => {
                if !seen.insert(id.to_string()) {
                    c.report(&join(&path, "id"), format!("duplicate ontic state `{id}`"));
                    ok = false;
                }
                labels.push(id.to_string());
                sectors.push(sector);
            }
            _ => ok = false,
        }
    }
    if !ok {
        return None;
    }
    OnticSpace::with_sectors(labels, sectors).ok()
}

type PreparationEntry = (String, QuantumState, EpistemicState);

fn read_preparations(
    c: &mut Checker,
    v: &Value,
    dimension: Option<usize>,
    space: Option<&OnticSpace>,
) -> Option<Vec<PreparationEntry>> {
    let map = c.map(v, "/preparations")?;
    let mut out = Vec::with_capacity(map.len());
    let mut ok = true;
    for (id, entry) in map {
        let path = join("/preparations", id);
        let Some(obj) = c.object(entry, &path, &["ket", "mu"], &[]) else {
            ok = false;
            continue;
        };
        let state = obj
            .get("ket")
            .and_then(|k| read_state(c, k, &join(&path, "ket"), dimension));
        let mu = obj
            .get("mu")
            .and_then(|m| read_mu(c, m, &join(&path, "mu"), space));
        match (state, mu) {
            (Some(s), Some(m)) => out.push((id.clone(), s, m)),
            _ => ok = false,
        }
    }
    ok.then_some(out)
}

fn read_state(c: &mut Checker, v: &Value, path: &str, dimension: Option<usize>) -> Option<QuantumState> {
    let amplitudes = c.ket(v, path, dimension)?;
    match QuantumState::new(amplitudes) {
        Ok(s) => Some(s),
        Err(e) => {
            c.report(path, e.to_string());
            None
        }
    }
}

fn read_mu(c: &mut Checker, v: &Value, path: &str, space: Option<&OnticSpace>) -> Option<EpistemicState> {
    let map = c.map(v, path)?;
    let space = space?;
    let mut weights = vec![0.0; space.len()];
    let mut ok = true;
    for (label, w) in map {
        let p = join(path, label);
        let Some(w) = c.number(w, &p) else {
            ok = false;
            continue;
        };
        if !(w >= 0.0 && w.is_finite()) {
            c.report(&p, format!("weight {w} is negative or not finite"));
            ok = false;
        }
        match space.index_of(label) {
            Some(i) => weights[i] = w,
            None => {
                c.report(&p, format!("unknown ontic state `{label}`"));
                ok = false;
            }
        }
    }
    // normalisation is a validation matter, not a schema one
    ok.then(|| EpistemicState::unchecked(weights))
}

type MeasurementEntry = (String, ProjectiveMeasurement, ResponseFunction);

fn read_measurements(
    c: &mut Checker,
    v: &Value,
    dimension: Option<usize>,
    space: Option<&OnticSpace>,
) -> Option<Vec<MeasurementEntry>> {
    let map = c.map(v, "/measurements")?;
    let mut out = Vec::with_capacity(map.len());
    let mut ok = true;
    for (id, entry) in map {
        let path = join("/measurements", id);
        let Some(obj) = c.object(entry, &path, &["basis", "xi"], &["outcomes"]) else {
            ok = false;
            continue;
        };
        let measurement = obj
            .get("basis")
            .and_then(|b| read_measurement(c, b, obj.get("outcomes"), &path, dimension));
        let outcomes = measurement.as_ref().map(|m| m.dim());
        let xi = obj
            .get("xi")
            .and_then(|x| read_xi(c, x, &join(&path, "xi"), space, outcomes));
        match (measurement, xi) {
            (Some(m), Some(x)) => out.push((id.clone(), m, x)),
            _ => ok = false,
        }
    }
    ok.then_some(out)
}

fn read_measurement(
    c: &mut Checker,
    basis: &Value,
    outcomes: Option<&Value>,
    path: &str,
    dimension: Option<usize>,
) -> Option<ProjectiveMeasurement> {
    let bpath = join(path, "basis");
    let items = c.array(basis, &bpath)?;
    if let Some(d) = dimension {
        if items.len() != d {
            c.report(
                &bpath,
                format!("expected {d} basis vectors, found {}", items.len()),
            );
            return None;
        }
    }
    let kets: Vec<Option<QuantumState>> = items
        .iter()
        .enumerate()
        .map(|(i, k)| read_state(c, k, &index(&bpath, i), dimension))
        .collect();
    let kets: Vec<QuantumState> = kets.into_iter().collect::<Option<_>>()?;
    let labels = match outcomes {
        Some(o) => {
            let opath = join(path, "outcomes");
            let labels = c.strings(o, &opath)?;
            if labels.len() != kets.len() {
                c.report(
                    &opath,
                    format!("expected {} outcome labels, found {}", kets.len(), labels.len()),
                );
                return None;
            }
            labels
        }
        None => default_outcomes(kets.len()),
    };
    match ProjectiveMeasurement::new(kets, labels) {
        Ok(m) => Some(m),
        Err(e) => {
            c.report(&bpath, e.to_string());
            None
        }
    }
}

fn default_outcomes(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn read_xi(
    c: &mut Checker,
    v: &Value,
    path: &str,
    space: Option<&OnticSpace>,
    outcomes: Option<usize>,
) -> Option<ResponseFunction> {
    let map = c.map(v, path)?;
    let space = space?;
    let mut rows: Vec<Option<Vec<f64>>> = vec![None; space.len()];
    let mut ok = true;
    for (label, row) in map {
        let p = join(path, label);
        let Some(i) = space.index_of(label) else {
            c.report(&p, format!("unknown ontic state `{label}`"));
            ok = false;
            continue;
        };
        let Some(values) = c.numbers(row, &p) else {
            ok = false;
            continue;
        };
        if let Some(n) = outcomes {
            if values.len() != n {
                c.report(&p, format!("expected {n} probabilities, found {}", values.len()));
                ok = false;
                continue;
            }
        }
        if let Some(x) = values.iter().find(|x| !x.is_finite()) {
            c.report(&p, format!("probability {x} is not finite"));
            ok = false;
            continue;
        }
        rows[i] = Some(values);
    }
    for (i, row) in rows.iter().enumerate() {
        if row.is_none() && ok {
            c.report(
                path,
                format!("no response for ontic state `{}`", space.labels()[i]),
            );
        }
    }
    let rows: Vec<Vec<f64>> = rows.into_iter().collect::<Option<_>>()?;
    ok.then(|| ResponseFunction::unchecked(rows))
}

pub fn model_to_value(model: &OntologicalModel) -> Value {
    let labels = model.space().labels();
    let mut top = Map::new();
    top.insert("dimension".into(), model.dimension().into());
    top.insert("tolerance".into(), model.born_tolerance().into());
    if model.support_epsilon() != tolerance::SUPPORT_EPSILON {
        top.insert("support_epsilon".into(), model.support_epsilon().into());
    }
    let states = labels
        .iter()
        .zip(model.space().sectors())
        .map(|(id, sector)| {
            let mut s = Map::new();
            s.insert("id".into(), id.clone().into());
            if let Some(sector) = sector {
                s.insert("sector".into(), sector.as_str().into());
            }
            Value::Object(s)
        })
        .collect();
    top.insert("ontic_states".into(), Value::Array(states));

    let mut preps = Map::new();
    for p in model.preparations() {
        let mut mu = Map::new();
        for (label, &w) in labels.iter().zip(p.mu.weights()) {
            if w != 0.0 {
                mu.insert(label.clone(), w.into());
            }
        }
        let mut entry = Map::new();
        entry.insert("ket".into(), schema::ket_value(p.state.amplitudes()));
        entry.insert("mu".into(), Value::Object(mu));
        preps.insert(p.id.clone(), Value::Object(entry));
    }
    top.insert("preparations".into(), Value::Object(preps));

    let mut meas = Map::new();
    for m in model.measurements() {
        let basis = m
            .measurement
            .basis()
            .iter()
            .map(|k| schema::ket_value(k.amplitudes()))
            .collect();
        let mut entry = Map::new();
        entry.insert("basis".into(), Value::Array(basis));
        let outcomes = m.measurement.labels();
        if outcomes != default_outcomes(outcomes.len()).as_slice() {
            entry.insert(
                "outcomes".into(),
                Value::Array(outcomes.iter().map(|o| o.clone().into()).collect()),
            );
        }
        let mut xi = Map::new();
        for (label, row) in labels.iter().zip(m.xi.table()) {
            xi.insert(
                label.clone(),
                Value::Array(row.iter().map(|&x| x.into()).collect()),
            );
        }
        entry.insert("xi".into(), Value::Object(xi));
        meas.insert(m.id.clone(), Value::Object(entry));
    }
    top.insert("measurements".into(), Value::Object(meas));
    Value::Object(top)
}

/// Serialises a model; `pretty` indents the output.
pub fn model_to_string(model: &OntologicalModel, pretty: bool) -> String {
    let v = model_to_value(model);
    let mut s = if pretty {
        serde_json::to_string_pretty(&v)
    } else {
        serde_json::to_string(&v)
    }
    .expect("JSON values always serialise");
    s.push('\n');
    s
}

/// Transition matrices are stored as `{"rows": [[...], ...]}`.
pub fn transition_from_str(text: &str) -> Result<TransitionMatrix, FormatError> {
    let doc = schema::parse(text)?;
    let mut c = Checker::new();
    let rows = c
        .object(&doc, "", &["rows"], &[])
        .and_then(|top| top.get("rows"))
        .and_then(|r| {
            let items = c.array(r, "/rows")?;
            let rows: Vec<Option<Vec<f64>>> = items
                .iter()
                .enumerate()
                .map(|(i, row)| c.numbers(row, &index("/rows", i)))
                .collect();
            rows.into_iter().collect::<Option<Vec<_>>>()
        });
    let rows = c.finish(rows)?;
    Ok(TransitionMatrix::new(rows)?)
}

pub fn transition_to_string(t: &TransitionMatrix) -> String {
    let rows: Vec<Value> = t
        .rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(|&x| x.into()).collect()))
        .collect();
    let mut top = Map::new();
    top.insert("rows".into(), Value::Array(rows));
    let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("JSON values always serialise");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use ontolab_core::reference;

    #[test]
    fn reference_models_round_trip() {
        for model in [
            reference::psi_complete(),
            reference::kochen_specker(200),
            reference::bell_model(50),
        ] {
            for pretty in [true, false] {
                let text = model_to_string(&model, pretty);
                let back = model_from_str(&text).unwrap();
                assert_eq!(back, model);
                assert_eq!(model_to_string(&back, pretty), text);
            }
        }
    }

    #[test]
    fn every_violation_is_listed() {
        let text = r#"{
            "dimension": 3,
            "tolerance": -1,
            "ontic_states": [{"id": "a"}, {"id": "a", "colour": "red"}],
            "preparations": {"0": {"ket": [[1, 0]], "mu": {"zz": 1}}},
            "measurements": {},
            "extra": true
        }"#;
        let err = model_from_str(text).unwrap_err();
        let paths: Vec<&str> = err.violations().iter().map(|v| v.path.as_str()).collect();
        assert_eq!(
            paths,
            vec![
                "/extra",
                "/dimension",
                "/tolerance",
                "/ontic_states/1/colour",
                "/ontic_states/1/id",
                "/preparations/0/ket",
            ]
        );
    }

    #[test]
    fn missing_xi_rows_are_reported() {
        let text = r#"{"dimension": 2, "tolerance": 1e-6,
            "ontic_states": [{"id": "a"}, {"id": "b"}],
            "preparations": {},
            "measurements": {"Z": {"basis": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]],
                                   "xi": {"a": [1, 0]}}}}"#;
        let err = model_from_str(text).unwrap_err();
        assert_eq!(err.violations().len(), 1);
        assert!(err.violations()[0].message.contains("`b`"));
    }

    #[test]
    fn transition_round_trip() {
        let t = TransitionMatrix::new(vec![vec![0.25, 0.75], vec![1.0, 0.0]]).unwrap();
        let back = transition_from_str(&transition_to_string(&t)).unwrap();
        assert_eq!(back, t);
        assert!(transition_from_str(r#"{"rows": [[0.5, 0.4], [0, 1]]}"#).is_err());
    }
}
