//! The reference fixture library: models and appendix tables, their file
//! names, and where they live on disk.

use std::path::{Path, PathBuf};

use ontolab_core::composite::{AssignmentTable, SettingGrid, TemporalOrder};
use ontolab_core::ontic::OntologicalModel;
use ontolab_core::reference;

use crate::error::FormatError;
use crate::format::{model_to_string, table_to_string, write_text};

pub const DATA_DIR_VAR: &str = "ONTOLAB_DATA_DIR";

/// `$ONTOLAB_DATA_DIR`, or the `data` directory shipped with the crate.
pub fn data_dir() -> PathBuf {
    std::env::var_os(DATA_DIR_VAR)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("data"))
}

/// `path` itself if it exists, otherwise the same name under [`data_dir`].
pub fn resolve(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    let candidate = data_dir().join(path);
    if candidate.exists() {
        candidate
    } else {
        path.to_path_buf()
    }
}

/// Cell counts of the discretised Kochen-Specker fixtures, by file name.
pub const KS_RESOLUTIONS: [(&str, usize); 3] = [
    ("ks_qubit_1k.json", 1_000),
    ("ks_qubit_10k.json", 10_000),
    ("ks_qubit_100k.json", 100_000),
];

/// Cells per preparation in the Bell model fixture.
pub const BELL_CELLS: usize = 1_000;

/// Model fixtures small enough to ship; the 100k-cell model is generated on
/// demand.
pub fn model_fixtures(include_large: bool) -> Vec<(&'static str, OntologicalModel)> {
    let mut out = vec![
        ("psi_complete.json", reference::psi_complete()),
        ("bell.json", reference::bell_model(BELL_CELLS)),
    ];
    for (name, cells) in KS_RESOLUTIONS {
        if include_large || cells <= 10_000 {
            out.push((name, reference::kochen_specker(cells)));
        }
    }
    out
}

fn table(grid: &SettingGrid, rows: &[(&str, &str, i8, i8)]) -> AssignmentTable {
    AssignmentTable::from_rows(grid.clone(), rows, TemporalOrder::AliceFirst)
        .expect("fixture tables are complete")
}

/// Tables I to V of the appendix, with the types they classify to.
pub fn table_fixtures() -> Vec<(&'static str, AssignmentTable, &'static str)> {
    let xy = SettingGrid::square(&["sx", "sy"]).expect("two settings");
    let zxy = SettingGrid::square(&["sz", "sx", "sy"]).expect("three settings");
    vec![
        (
            "table_i.json",
            table(
                &xy,
                &[
                    ("sx", "sx", 1, 1),
                    ("sx", "sy", 1, -1),
                    ("sy", "sx", -1, 1),
                    ("sy", "sy", -1, -1),
                ],
            ),
            "TYPE_1",
        ),
        (
            "table_ii.json",
            table(
                &xy,
                &[
                    ("sx", "sx", 1, 1),
                    ("sx", "sy", 1, 1),
                    ("sy", "sx", 1, 1),
                    ("sy", "sy", -1, 1),
                ],
            ),
            "TYPE_2I",
        ),
        (
            "table_iii.json",
            table(
                &xy,
                &[
                    ("sx", "sx", 1, 1),
                    ("sx", "sy", 1, 1),
                    ("sy", "sx", 1, 1),
                    ("sy", "sy", 1, -1),
                ],
            ),
            "TYPE_2II",
        ),
        (
            "table_iv.json",
            table(
                &xy,
                &[
                    ("sx", "sx", 1, 1),
                    ("sx", "sy", 1, 1),
                    ("sy", "sx", 1, -1),
                    ("sy", "sy", -1, -1),
                ],
            ),
            "TYPE_2III",
        ),
        (
            "table_v.json",
            table(
                &zxy,
                &[
                    ("sz", "sz", 1, 1),
                    ("sz", "sx", 1, 1),
                    ("sz", "sy", 1, 1),
                    ("sx", "sz", 1, 1),
                    ("sx", "sx", 1, 1),
                    ("sx", "sy", 1, 1),
                    ("sy", "sz", 1, -1),
                    ("sy", "sx", 1, -1),
                    ("sy", "sy", 1, 1),
                ],
            ),
            "TYPE_2II",
        ),
    ]
}

/// Overlap search for `(|0>, |+>)` under `Z` and `X` with `|1>` present.
pub const SEARCH_EXAMPLE: (&str, &str) = (
    "search_zero_plus.json",
    r#"{
  "states": {
    "0": [[1.0, 0.0], [0.0, 0.0]],
    "1": [[0.0, 0.0], [1.0, 0.0]],
    "+": [[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]]
  },
  "measurements": {
    "Z": {"basis": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]], "outcomes": ["0", "1"]},
    "X": {"basis": [[[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]],
                    [[0.7071067811865476, 0.0], [-0.7071067811865476, 0.0]]], "outcomes": ["+", "-"]}
  },
  "ontic_count": 4,
  "objective": ["0", "+"],
  "brute_force_resolution": 0.01
}
"#,
);

/// Serialised form of a model fixture. Discretised models are written
/// compactly, the rest indented.
pub fn model_fixture_text(model: &OntologicalModel) -> String {
    model_to_string(model, model.space().len() <= 64)
}

/// Writes every fixture to `dir` and returns the paths written.
pub fn write_fixtures(dir: &Path, include_large: bool) -> Result<Vec<PathBuf>, FormatError> {
    std::fs::create_dir_all(dir).map_err(|source| FormatError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    for (name, model) in model_fixtures(include_large) {
        let path = dir.join(name);
        write_text(&path, &model_fixture_text(&model))?;
        written.push(path);
    }
    for (name, table, _) in table_fixtures() {
        let path = dir.join(name);
        write_text(&path, &table_to_string(&table))?;
        written.push(path);
    }
    let path = dir.join(SEARCH_EXAMPLE.0);
    write_text(&path, SEARCH_EXAMPLE.1)?;
    written.push(path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ontolab_core::composite::classify;

    #[test]
    fn tables_classify_as_labelled() {
        for (name, t, expected) in table_fixtures() {
            assert_eq!(classify(&t).tag.as_str(), expected, "{name}");
        }
    }
}
