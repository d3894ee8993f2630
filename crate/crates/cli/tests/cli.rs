use std::process::{Command, Output};

use serde_json::Value;

fn torus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = torus(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn error_code(args: &[&str]) -> String {
    let out = torus(args);
    assert!(!out.status.success(), "{args:?} should fail");
    assert!(out.stdout.is_empty());
    let stderr = String::from_utf8(out.stderr).unwrap();
    let start = stderr.find("error[").expect("code prefix") + 6;
    let end = stderr[start..].find(']').unwrap() + start;
    stderr[start..end].to_string()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn envelope_shape() {
    let v = json(&["invariant", "2", "3"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "invariant");
    assert_eq!(v["inputs"]["p"], 2);
    assert!(v["version"].is_string());
}

#[test]
fn invariant_trefoil_and_link() {
    let v = json(&["invariant", "2", "3"]);
    assert_eq!(strings(&v["results"]["coeffs"]), ["1", "-1", "1"]);
    assert_eq!(v["results"]["determinant"], "3");
    assert_eq!(v["results"]["multiplicities"], serde_json::json!({"6": 1}));

    let v = json(&["invariant", "2", "4"]);
    assert_eq!(
        v["results"]["multiplicities"],
        serde_json::json!({"1": 1, "4": 1})
    );
    assert_eq!(v["results"]["params"]["d"], 2);
    assert_eq!(v["results"]["determinant_by_parity"], Value::Null);

    assert_eq!(error_code(&["invariant", "0", "3"]), "INVALID_ARGUMENT");
}

#[test]
fn moments_values() {
    let v = json(&["moments", "2", "3"]);
    assert_eq!(
        strings(&v["results"]["values"]),
        ["2", "1", "-1", "-2", "-1", "1"]
    );
    assert_eq!(v["results"]["mean"], "0");
    assert_eq!(v["results"]["variance"], "2");
    assert!(v["results"]["parseval_gap"].as_f64().unwrap() < 1e-9);
    assert_eq!(json(&["moments", "3", "5"])["results"]["variance"], "8");
    assert_eq!(error_code(&["moments", "2", "4"]), "LINK_CASE");
}

#[test]
fn scan_arcs() {
    let v = json(&["scan", "3", "all", "[0,1]"]);
    assert_eq!(v["results"]["observed_ratio"], "1/1");
    let v = json(&["scan", "200", "coprime", "[1/10,7/20]"]);
    assert!((v["results"]["observed_f64"].as_f64().unwrap() - 0.25).abs() <= 0.05);
    // two-endpoint form gives the same report
    let w = json(&["scan", "200", "coprime", "1/10", "7/20"]);
    assert_eq!(v["results"], w["results"]);
    assert_eq!(error_code(&["scan", "10", "coprime", "[0.1,0.5]"]), "USAGE");
    assert_eq!(error_code(&["scan", "10", "coprime", "[1/2,1/3]"]), "USAGE");
    assert_eq!(error_code(&["scan", "10", "neither"]), "USAGE");
}

#[test]
fn scan_frequency() {
    let v = json(&["scan", "300", "coprime", "--freq", "6"]);
    let f = &v["results"]["frequency"];
    assert_eq!(f["limit"], "1/3");
    assert_eq!(f["limit_coprime"], "1/6");
    assert!((f["value_f64"].as_f64().unwrap() - 1.0 / 6.0).abs() < 0.01);
}

#[test]
fn scan_csv_and_jobs() {
    let dir = std::env::temp_dir().join(format!("torus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rows.csv");
    let path_str = path.to_str().unwrap();
    json(&["scan", "4", "all", "[0,1/2]", "--per-pair", path_str]);
    let written = std::fs::read_to_string(&path).unwrap();
    let mut lines = written.lines();
    assert_eq!(lines.next(), Some("p,q,d,roots_total,roots_in_arc"));
    assert_eq!(lines.count(), 16);

    let out = torus(&["scan", "4", "all", "[0,1/2]", "--csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), written);

    let one = torus(&["scan", "60", "all", "[1/7,2/3]", "--jobs", "1"]);
    let four = torus(&["scan", "60", "all", "[1/7,2/3]", "--jobs", "4"]);
    assert_eq!(one.stdout, four.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn tower_knot() {
    let v = json(&["tower", "2", "3", "--ell", "2", "--n", "3"]);
    let orders: Vec<String> = v["results"]["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["order"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(orders, ["1", "3", "3", "3"]);
    assert_eq!(v["results"]["closed_form_agrees"], true);
    let inv = &v["results"]["invariants"];
    assert_eq!(
        (
            inv["mu"].as_u64(),
            inv["lambda"].as_u64(),
            inv["nu"].as_i64()
        ),
        (Some(0), Some(0), Some(0))
    );
    assert_eq!(inv["nu_kind"], "absolute");
}

#[test]
fn tower_link() {
    let v = json(&["tower", "3", "6", "--z", "1,1,1", "--ell", "3", "--n", "4"]);
    let r = &v["results"];
    assert_eq!(r["relative"], true);
    assert_eq!(r["invariants"]["mu"], 0);
    assert_eq!(r["invariants"]["nu_kind"], "relative");
    assert_eq!(r["closed_form_lambda"], 3);
    assert_eq!(r["invariants"]["lambda"], r["ledger_lambda"]);
    assert_eq!(r["infinite_at"], 1);

    let v = json(&["tower", "2", "4", "--ell", "3", "--n", "3"]);
    assert_eq!(v["inputs"]["z"], serde_json::json!([1, 1]));
    assert_eq!(v["results"]["invariants"]["nu"], 0);

    assert_eq!(
        error_code(&["tower", "2", "4", "--z", "1,-1", "--ell", "2"]),
        "ZERO_ALPHA"
    );
    assert_eq!(
        error_code(&["tower", "2", "4", "--z", "2,4", "--ell", "2"]),
        "NON_ADMISSIBLE"
    );
    assert_eq!(
        error_code(&["tower", "2", "3", "--ell", "4"]),
        "INVALID_ARGUMENT"
    );
}

#[test]
fn tower_csv() {
    let out = torus(&["tower", "3", "5", "--ell", "3", "--n", "2", "--csv"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n,order,valuation,closed_form\n0,1,0,1\n1,25,0,25\n2,25,0,25\n"
    );
}

#[test]
fn mahler_measures() {
    let v = json(&["mahler", "3", "4", "--grid", "1048576"]);
    assert!(
        v["results"]["log_measure_quadrature"]
            .as_f64()
            .unwrap()
            .abs()
            <= 1e-2
    );
    assert!((v["results"]["measure_roots"].as_f64().unwrap() - 1.0).abs() <= 1e-9);
    let v = json(&["mahler", "--poly", "-1,2", "--grid", "1048576"]);
    assert!((v["results"]["log_measure_quadrature"].as_f64().unwrap() - 2f64.ln()).abs() <= 1e-2);
    assert_eq!(error_code(&["mahler", "--poly", "0"]), "ZERO_INPUT");
    assert_eq!(error_code(&["mahler", "3"]), "USAGE");
}

#[test]
fn deterministic_output() {
    for args in [
        &["moments", "4", "9"][..],
        &["tower", "4", "6", "--z", "1,2", "--ell", "5", "--n", "3"],
    ] {
        assert_eq!(torus(args).stdout, torus(args).stdout);
    }
}
