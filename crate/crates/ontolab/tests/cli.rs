use std::process::Command;

use ontolab::cli::{run, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
use serde_json::Value;

fn ontolab(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ontolab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn validate_reference_models() {
    let (code, out, _) = ontolab(&["validate", "ks_qubit_10k.json"]);
    assert_eq!(code, EXIT_OK);
    let r = json(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["properties"]["maximally_epistemic"], true);

    let (code, out, _) = ontolab(&["validate", "psi_complete.json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["properties"]["maximally_epistemic"], false);
}

#[test]
fn validate_reports_born_violations() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/psi_complete.json");
    let text = std::fs::read_to_string(path).unwrap();
    let broken = text.replacen("\"psi:+\": 1.0", "\"psi:0\": 1.0", 1);
    assert_ne!(broken, text);
    let dir = std::env::temp_dir().join(format!("ontolab-born-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("broken.json");
    std::fs::write(&file, broken).unwrap();

    let (code, out, _) = ontolab(&["validate", file.to_str().unwrap()]);
    assert_eq!(code, EXIT_NEGATIVE);
    let r = json(&out);
    assert_eq!(r["passed"], false);
    assert!((r["max_residual"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(r["worst"]["preparation"], "+");
    assert!(r["properties"].is_null());

    // a loose enough tolerance accepts it
    let (code, _, _) = ontolab(&["validate", file.to_str().unwrap(), "--tolerance", "0.6"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn bound_sweep_half_row() {
    let (code, out, _) = ontolab(&["bound-sweep", "--alpha", "0.05:0.5:0.05"]);
    assert_eq!(code, EXIT_OK);
    let mut rows = csv::Reader::from_reader(out.as_bytes());
    let headers = rows.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        vec![
            "alpha_sq",
            "chsh_target",
            "max_overlap_mass",
            "min_nonlocal_mass",
            "bound_rhs"
        ]
    );
    let records: Vec<csv::StringRecord> = rows.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 10);
    let last = &records[9];
    assert_eq!(&last[0], "0.5");
    let rhs: f64 = last[4].parse().unwrap();
    assert!((rhs - 0.585786).abs() < 5e-7);
}

#[test]
fn classify_table_iv() {
    let (code, out, _) = ontolab(&["classify", "table_iv.json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["type"], "TYPE_2III");
}

#[test]
fn evolve_respects_temporal_order() {
    let (code, out, _) = ontolab(&["evolve", "table_v.json", "--party", "A", "--setting", "sz"]);
    assert_eq!(code, EXIT_OK);
    let r = json(&out);
    assert_eq!(r["type"], "TYPE_1");
    assert_eq!(r["bob_local"]["sx"], 1);

    let (code, _, err) = ontolab(&["evolve", "table_v.json", "--party", "B", "--setting", "sz"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("temporal order"));
}

#[test]
fn clone_sim_verdicts() {
    let (code, out, _) = ontolab(&["clone-sim", "ks_qubit_10k.json", "--basis", "0,1", "--psi", "+"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert!(json(&out)["margin"].as_f64().unwrap() <= -0.8);

    let (code, out, _) = ontolab(&["clone-sim", "psi_complete.json", "--basis", "0,1", "--psi", "+"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["max_chsh"], 4.0);

    let (code, _, err) = ontolab(&["clone-sim", "psi_complete.json", "--basis", "0,+", "--psi", "+i"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("orthonormal"), "{err}");
}

#[test]
fn epistemicity_csv_and_bound_verdict() {
    let (code, out, _) = ontolab(&["epistemicity", "psi_complete.json", "--csv", "--pair", "0,+"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "phi,psi,q_overlap,o_overlap,omega");
    assert_eq!(lines.len(), 2);
    assert!(lines[1].ends_with(",0.0,0.0"));

    let (code, out, _) = ontolab(&["epistemicity", "ks_qubit_10k.json", "--bound", "0,1,+"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(json(&out)["bound_checks"][0]["satisfied"], false);
}

#[test]
fn search_example() {
    let (code, out, _) = ontolab(&["search", "search_zero_plus.json"]);
    assert_eq!(code, EXIT_OK);
    let r = json(&out);
    let value = r["value"].as_f64().unwrap();
    assert!((value - 0.5).abs() < 1e-9);
    assert!((r["brute_force"].as_f64().unwrap() - value).abs() <= 0.02);
    assert!(ontolab::format::model_from_value(&r["witness"]).is_ok());
}

#[test]
fn prop1_is_independent_of_job_count() {
    let (code, serial, _) = ontolab(&["prop1", "--settings", "sz,sx,sy"]);
    assert_eq!(code, EXIT_OK);
    let (_, parallel, _) = ontolab(&["prop1", "--settings", "sz,sx,sy", "--jobs", "4"]);
    assert_eq!(serial, parallel);
    let r = json(&serial);
    assert_eq!(r["consistent"], 65536);
    assert_eq!(r["all_local"], true);

    let (code, _, err) = ontolab(&["prop1", "--settings", "sz,sx,sy,s1"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("too large"));
    let (code, _, _) = ontolab(&["prop1", "--settings", "sx,sy"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn monte_carlo_is_reproducible() {
    let args = ["monte-carlo", "--samples", "20000", "--seed", "7"];
    let (code, first, _) = ontolab(&args);
    assert_eq!(code, EXIT_OK);
    let (_, second, _) = ontolab(&args);
    assert_eq!(first, second);
    let (_, other, _) = ontolab(&["monte-carlo", "--samples", "20000", "--seed", "8"]);
    assert_ne!(first, other);
    let (code, _, _) = ontolab(&["monte-carlo", "--samples", "10"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn malformed_json_reports_position() {
    let dir = std::env::temp_dir().join(format!("ontolab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"dimension\": 2,\n  \"tolerance\": ,\n}").unwrap();
    let (code, _, err) = ontolab(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 3, column 16"), "{err}");

    let schema = dir.join("schema.json");
    std::fs::write(
        &schema,
        r#"{"dimension": 5, "tolerance": 0, "ontic_states": [], "preparations": [], "measurements": {}}"#,
    )
    .unwrap();
    let (code, _, err) = ontolab(&["validate", schema.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("4 schema violation(s)"), "{err}");
    for path in ["/dimension", "/tolerance", "/ontic_states", "/preparations"] {
        assert!(
            err.contains(&format!("\n  {path}: ")),
            "{path} missing from {err}"
        );
    }
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("ontolab-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("sweep.csv");
    let (code, out, _) = ontolab(&["bound-sweep", "--alpha", "0.5", "--out", target.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&target).unwrap();
    assert!(text.starts_with("alpha_sq,"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(ontolab(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(ontolab(&["bound-sweep", "--alpha", "a:b"]).0, EXIT_INPUT);
    assert_eq!(ontolab(&["validate", "no_such_file.json"]).0, EXIT_INPUT);
    assert_eq!(ontolab(&["--help"]).0, EXIT_OK);
}

#[test]
fn binary_honours_the_data_dir_variable() {
    let dir = std::env::temp_dir().join(format!("ontolab-data-{}", std::process::id()));
    let out = Command::new(env!("CARGO_BIN_EXE_ontolab"))
        .args(["fixtures", "--dir", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let status = Command::new(env!("CARGO_BIN_EXE_ontolab"))
        .args(["classify", "table_iii.json"])
        .env("ONTOLAB_DATA_DIR", &dir)
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&status.stdout).contains("TYPE_2II"));

    let missing = Command::new(env!("CARGO_BIN_EXE_ontolab"))
        .args(["classify", "table_iii.json"])
        .env("ONTOLAB_DATA_DIR", dir.join("nowhere"))
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}
