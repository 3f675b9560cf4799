//! Search instances for the overlap LP:
//!
//! ```json
//! {"states": {"0": [[1, 0], [0, 0]], "+": [[0.7071067811865476, 0], [0.7071067811865476, 0]]},
//!  "measurements": {"Z": {"basis": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}},
//!  "ontic_count": 4,
//!  "objective": ["0", "+"],
//!  "brute_force_resolution": 0.01}
//! ```
//!
//! Measurements take the same `basis` and optional `outcomes` keys as the
//! model format. `brute_force_resolution` is optional and requests the grid
//! oracle as a cross-check.

use serde_json::Value;

use ontolab_core::quantum::{ProjectiveMeasurement, QuantumState};

use super::schema::{self, index, join, Checker};
use crate::error::FormatError;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchInstance {
    pub states: Vec<(String, QuantumState)>,
    pub measurements: Vec<(String, ProjectiveMeasurement)>,
    pub ontic_count: usize,
    pub objective: (String, String),
    pub brute_force_resolution: Option<f64>,
}

pub fn instance_from_str(text: &str) -> Result<SearchInstance, FormatError> {
    let doc = schema::parse(text)?;
    let mut c = Checker::new();
    let inst = read_instance(&mut c, &doc);
    c.finish(inst)
}

fn read_instance(c: &mut Checker, doc: &Value) -> Option<SearchInstance> {
    let top = c.object(
        doc,
        "",
        &["states", "measurements", "ontic_count", "objective"],
        &["brute_force_resolution"],
    )?;
    let states = top.get("states").and_then(|s| {
        let map = c.map(s, "/states")?;
        let parsed: Vec<Option<(String, QuantumState)>> = map
            .iter()
            .map(|(id, k)| {
                let path = join("/states", id);
                let amps = c.ket(k, &path, None)?;
                match QuantumState::new(amps) {
                    Ok(s) => Some((id.clone(), s)),
                    Err(e) => {
                        c.report(&path, e.to_string());
                        None
                    }
                }
            })
            .collect();
        parsed.into_iter().collect::<Option<Vec<_>>>()
    });
    let measurements = top.get("measurements").and_then(|m| {
        let map = c.map(m, "/measurements")?;
        let parsed: Vec<Option<(String, ProjectiveMeasurement)>> = map
            .iter()
            .map(|(id, v)| read_measurement(c, v, &join("/measurements", id)).map(|m| (id.clone(), m)))
            .collect();
        parsed.into_iter().collect::<Option<Vec<_>>>()
    });
    let ontic_count = top.get("ontic_count").and_then(|n| c.unsigned(n, "/ontic_count"));
    let objective = top.get("objective").and_then(|o| {
        let items = c.array(o, "/objective")?;
        let ids: Vec<String> = items
            .iter()
            .enumerate()
            .map(|(i, v)| c.string(v, &index("/objective", i)).map(String::from))
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<Option<_>>()?;
        if ids.len() != 2 {
            c.report(
                "/objective",
                format!("expected two state ids, found {}", ids.len()),
            );
            return None;
        }
        Some((ids[0].clone(), ids[1].clone()))
    });
    let resolution = match top.get("brute_force_resolution") {
        Some(r) => Some(c.number(r, "/brute_force_resolution")?),
        None => None,
    };
    if let (Some(states), Some((phi, psi))) = (&states, &objective) {
        for id in [phi, psi] {
            if !states.iter().any(|(s, _)| s == id) {
                c.report("/objective", format!("unknown state `{id}`"));
            }
        }
    }
    Some(SearchInstance {
        states: states?,
        measurements: measurements?,
        ontic_count: ontic_count?,
        objective: objective?,
        brute_force_resolution: resolution,
    })
}

fn read_measurement(c: &mut Checker, v: &Value, path: &str) -> Option<ProjectiveMeasurement> {
    let obj = c.object(v, path, &["basis"], &["outcomes"])?;
    let bpath = join(path, "basis");
    let items = c.array(obj.get("basis")?, &bpath)?;
    let kets: Vec<Option<QuantumState>> = items
        .iter()
        .enumerate()
        .map(|(i, k)| {
            let p = index(&bpath, i);
            let amps = c.ket(k, &p, None)?;
            QuantumState::new(amps)
                .map_err(|e| c.report(&p, e.to_string()))
                .ok()
        })
        .collect();
    let kets: Vec<QuantumState> = kets.into_iter().collect::<Option<_>>()?;
    let labels = match obj.get("outcomes") {
        Some(o) => c.strings(o, &join(path, "outcomes"))?,
        None => (0..kets.len()).map(|i| i.to_string()).collect(),
    };
    ProjectiveMeasurement::new(kets, labels)
        .map_err(|e| c.report(&bpath, e.to_string()))
        .ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_example() {
        let text = r#"{"states": {"0": [[1, 0], [0, 0]], "+": [[0.7071067811865476, 0], [0.7071067811865476, 0]]},
            "measurements": {"Z": {"basis": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}},
            "ontic_count": 4, "objective": ["0", "+"], "brute_force_resolution": 0.01}"#;
        let inst = instance_from_str(text).unwrap();
        assert_eq!(inst.states.len(), 2);
        assert_eq!(
            inst.measurements[0].1.labels(),
            &["0".to_string(), "1".to_string()]
        );
        assert_eq!(inst.objective, ("0".to_string(), "+".to_string()));
        assert_eq!(inst.brute_force_resolution, Some(0.01));
    }

    #[test]
    fn self_objective_is_allowed() {
        let text = r#"{"states": {"0": [[1, 0], [0, 0]]}, "measurements": {},
            "ontic_count": 1, "objective": ["0", "0"]}"#;
        assert_eq!(instance_from_str(text).unwrap().objective.1, "0");
    }

    #[test]
    fn unknown_objective_and_bad_ket() {
        let text = r#"{"states": {"0": [[2, 0], [0, 0]]}, "measurements": {},
            "ontic_count": 1, "objective": ["0", "x"], "colour": 1}"#;
        let err = instance_from_str(text).unwrap_err();
        assert_eq!(err.violations().len(), 2);
    }
}
