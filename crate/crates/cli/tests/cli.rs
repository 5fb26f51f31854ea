use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn iwatsuka(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iwatsuka")).args(args).output().expect("binary runs")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap_or_else(|_| panic!("stderr is JSON: {}", String::from_utf8_lossy(&out.stderr)))
}

/// CSV body after the `#` header, split into records.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    csv::Reader::from_reader(body.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

fn without_wall_time(path: &Path) -> String {
    fs::read_to_string(path).unwrap().lines().filter(|l| !l.starts_with("# wall_time_s")).collect::<Vec<_>>().join("\n")
}

#[test]
fn butterfly_is_deterministic_and_headed() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = iwatsuka(&["butterfly", "--qmax", "7", "--out", dir.path().to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let first = without_wall_time(&a.path().join("butterfly.csv"));
    assert_eq!(first, without_wall_time(&b.path().join("butterfly.csv")));
    assert!(first.starts_with("# tool: iwatsuka "));
    let config_line = first.lines().find(|l| l.starts_with("# config: ")).unwrap();
    let config: Value = serde_json::from_str(&config_line["# config: ".len()..]).unwrap();
    assert_eq!(config["qmax"], 7);
    // every resolved default is echoed
    assert_eq!(config["k_points"], 4);
    assert!(!first.contains('\r'));

    let rows = csv_rows(&first);
    // sum over q <= 7 of phi(q) * q eigenvalues per k point
    let per_k: usize = [(1, 1), (2, 1), (3, 2), (4, 2), (5, 4), (6, 2), (7, 6)].iter().map(|(q, phi)| q * phi).sum();
    assert_eq!(rows.len(), per_k * 16);
    for row in &rows {
        let e: f64 = row[2].parse().unwrap();
        assert!(e.abs() <= 4.0 + 1e-12);
    }
}

#[test]
fn hull_table_and_pattern_dump() {
    let dir = tempfile::tempdir().unwrap();
    let out = iwatsuka(&["hull", "--slope", "quadratic:0,1,1,2", "--Mmax", "6", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let rows = csv_rows(&fs::read_to_string(dir.path().join("hull.csv")).unwrap());
    assert_eq!(rows.len(), 6);
    let counts: Vec<usize> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(counts.windows(2).all(|w| w[0] < w[1]));
    assert!(rows.iter().all(|r| r[3] == "true"));

    let dump: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("hull_patterns.json")).unwrap()).unwrap();
    let windows = dump["windows"].as_array().unwrap();
    assert_eq!(windows.len(), 4);
    for (w, count) in windows.iter().zip(&counts) {
        assert_eq!(w["patterns"].as_array().unwrap().len(), *count);
    }
}

#[test]
fn chern_rows_for_both_bulk_fluxes() {
    let out = iwatsuka(&["chern", "--bplus", "2pi*1/3", "--bminus", "2pi*2/3", "--fluxes", "2pi*1/5"]);
    assert!(out.status.success());
    let rows = csv_rows(&String::from_utf8(out.stdout).unwrap());
    let chern: Vec<(String, i64)> =
        rows.iter().map(|r| (r[0].clone(), r[5].parse::<f64>().unwrap().round() as i64)).collect();
    assert_eq!(&chern[..4], &[
        ("2pi*1/3".to_string(), 1),
        ("2pi*1/3".to_string(), -1),
        ("2pi*2/3".to_string(), -1),
        ("2pi*2/3".to_string(), 1),
    ]);
    assert_eq!(chern[4], ("2pi*1/5".to_string(), 1));
    assert_eq!(rows.len(), 8);
}

#[test]
fn config_file_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    fs::write(&path, r#"{"qmax": 3, "k_points": 2, "field": {"slope": {"type": "+inf"}, "b_plus": "2pi*1/3", "b_minus": 2.0}}"#)
        .unwrap();
    let out = iwatsuka(&["butterfly", "--config", path.to_str().unwrap(), "--k-points", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(r#""qmax":3"#));
    assert!(text.contains(r#""k_points":1"#));
    assert!(text.contains(r#""b_minus":2.0"#));
    // q = 1, 2, 3 with one k point each
    assert_eq!(csv_rows(&text).len(), 1 + 2 + 6);
}

#[test]
fn invalid_input_exits_2_with_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\n  \"qmax\": 3,\n  \"kgrid\": 10\n}").unwrap();
    let out = iwatsuka(&["butterfly", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_json(&out);
    assert_eq!(err["exit_code"], 2);
    let message = err["message"].as_str().unwrap();
    assert!(message.contains("line 3") && message.contains("kgrid"), "{message}");

    for args in [
        &["verify-bic", "--slope", "rational:1"][..],
        &["butterfly", "--qmax", "0"],
        &["chern", "--bplus", "1.0"],
        &["spectrum", "--window", "40"],
        &["nonsense"],
    ] {
        let out = iwatsuka(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(stderr_json(&out)["exit_code"], 2);
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn numerical_guard_exits_3() {
    // E = 0 is inside the middle band of both bulk spectra
    let out = iwatsuka(&["verify-bic", "--mu", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr_json(&out);
    assert_eq!(err["error"], "NoCommonGap");

    let out = iwatsuka(&["verify-bic", "--bplus", "2pi*1/2", "--bminus", "0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_bic_reference_run_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = iwatsuka(&[
        "verify-bic",
        "--bplus",
        "2pi*1/3",
        "--bminus",
        "2pi*2/3",
        "--slope",
        "rational:1,2",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("verify-bic.json")).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["chern_plus"].as_f64().unwrap().round(), 1.0);
    assert_eq!(report["chern_minus"].as_f64().unwrap().round(), -1.0);
    assert!((report["winding"].as_f64().unwrap() - 2.0).abs() < 0.1);
    assert_eq!(report["meta"]["config"]["field"]["slope"]["type"], "rational");
    assert!(report["meta"]["wall_time_s"].is_number());
}
