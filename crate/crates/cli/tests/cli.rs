use std::process::Command;

use serde_json::Value;

fn p1z(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_p1z"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, stdout, stderr) = p1z(args);
    let v = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout:?} {stderr:?}"));
    (code, v)
}

fn f(v: &Value) -> f64 {
    match v {
        Value::Number(n) => n.as_f64().unwrap(),
        Value::String(s) if s == "+inf" => f64::INFINITY,
        Value::String(s) if s == "-inf" => f64::NEG_INFINITY,
        other => panic!("not a number: {other}"),
    }
}

#[test]
fn envelope_shape() {
    let (code, v) = json(&["classify", "--a", "2", "--b", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "classify");
    assert_eq!(v["params"]["a"], "2");
    assert_eq!(v["payload"]["class"], "Ample");
    assert_eq!(v["payload"]["exact"], true);
    assert!(v["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn classify_geography() {
    for (a, b, class) in [
        ("2", "3", "Ample"),
        ("1", "2", "NefNotAmple"),
        ("0.7", "0.7", "BigNotNef"),
        ("1/2", "1/2", "PseudoEffectiveBoundary"),
        ("0.3", "0.3", "NotPseudoEffective"),
    ] {
        let (code, v) = json(&["classify", "--a", a, "--b", b]);
        assert_eq!(code, 0);
        assert_eq!(v["payload"]["class"], class, "({a}, {b})");
    }
}

#[test]
fn theta_of_symmetric_params() {
    let (_, v) = json(&["theta", "--a", "1", "--b", "1"]);
    let th = &v["payload"]["theta"];
    assert_eq!(th["kind"], "Interval");
    assert_eq!(f(&th["lower"]), 0.0);
    assert_eq!(f(&th["upper"]), 1.0);
    assert!((f(&v["payload"]["phi_max"]["value"]) - 2f64.ln()).abs() < 1e-15);
}

#[test]
fn volume_methods_agree() {
    let (_, closed) = json(&["volume", "--a", "0.7", "--b", "0.6"]);
    let (_, quad) = json(&[
        "volume",
        "--a",
        "0.7",
        "--b",
        "0.6",
        "--method",
        "quadrature",
    ]);
    let c = f(&closed["payload"]["value"]);
    let q = f(&quad["payload"]["value"]);
    assert!(c > 0.0 && (c - q).abs() < 1e-9, "{c} {q}");

    let (code, lat) = json(&[
        "volume", "--a", "2", "--b", "3", "--method", "lattice", "--n", "100",
    ]);
    assert_eq!(code, 0);
    let p = &lat["payload"];
    assert!(f(&p["lower"]) <= f(&p["closed"]) && f(&p["closed"]) <= f(&p["upper"]));
}

#[test]
fn selfint_value() {
    let (_, v) = json(&["selfint", "--a", "2", "--b", "3"]);
    let want = (6f64.ln() + 1.0) / 2.0;
    assert!((f(&v["payload"]["value"]) - want).abs() < 1e-15);
}

#[test]
fn sections_span_and_enumeration() {
    let (code, v) = json(&[
        "sections",
        "--a",
        "1",
        "--b",
        "1",
        "--n",
        "2",
        "--span",
        "--enumerate",
        "sup",
        "--monomials-only",
    ]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!(p["span"], serde_json::json!([0, 1, 2]));
    assert_eq!(p["h0_nonzero"], true);
    // 0, ±1, ±z⁻², ±z⁻¹, ±2z⁻¹ (sup norms 1, 1, 1/4, 1)
    assert_eq!(p["enumeration"]["count"], 9);
    assert_eq!(p["enumeration"]["exact"], true);
}

#[test]
fn sections_over_cap_is_domain_error() {
    let (code, v) = json(&[
        "sections",
        "--a",
        "2",
        "--b",
        "2",
        "--n",
        "9",
        "--enumerate",
        "l2",
    ]);
    assert_eq!(code, 3);
    assert!(v["payload"].is_null());
    assert!(!v["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn zariski_json_and_csv() {
    let (code, v) = json(&["zariski", "--a", "2", "--b", "1/2", "--samples", "16"]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!(p["nef_witness"]["passed"], true);
    assert_eq!(p["rows"].as_array().unwrap().len(), 16);
    assert_eq!(p["breakpoints"]["r_out"], "+inf");

    let (code, csv, _) = p1z(&[
        "zariski",
        "--a",
        "2",
        "--b",
        "1/2",
        "--samples",
        "16",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("radius,p,g,neg"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 16);
    for r in &rows {
        // g = p + neg and neg ≥ 0
        assert!(
            (r[2] - r[1] - r[3]).abs() < 1e-12 * r[2].abs().max(1.0),
            "{r:?}"
        );
        assert!(r[3] >= 0.0);
    }
}

#[test]
fn zariski_respects_radius_range() {
    let (_, v) = json(&[
        "zariski",
        "--a",
        "1",
        "--b",
        "1",
        "--samples",
        "3",
        "--rmin",
        "0.5",
        "--rmax",
        "2",
    ]);
    let rows = v["payload"]["rows"].as_array().unwrap();
    assert!((f(&rows[0]["radius"]) - 0.5).abs() < 1e-15);
    assert!((f(&rows[2]["radius"]) - 2.0).abs() < 1e-14);
    let (code, _, _) = p1z(&[
        "zariski", "--a", "1", "--b", "1", "--rmin", "2", "--rmax", "1",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn zariski_not_pseudo_effective() {
    let (code, v) = json(&["zariski", "--a", "1/4", "--b", "1/4"]);
    assert_eq!(code, 3);
    assert!(v["payload"].is_null());
}

#[test]
fn construct_gap_is_verified() {
    let (code, v) = json(&["construct-gap", "--n", "5"]);
    assert_eq!(code, 0);
    let p = &v["payload"];
    assert_eq!(p["verified"], true);
    assert_eq!(p["class"], "BigNotNef");
    assert!(p["h0_nonzero"]
        .as_array()
        .unwrap()
        .iter()
        .all(|h| h == false));
    assert!(f(&p["a_float"]) + f(&p["b_float"]) > 1.0);
}

#[test]
fn verify_suite_passes() {
    let (code, v) = json(&["verify", "--suite", "numerics"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["passed"], true);
    assert!(v["payload"]["total"].as_u64().unwrap() > 0);
}

#[test]
fn usage_errors() {
    assert_eq!(p1z(&["theta", "--a", "x", "--b", "1"]).0, 2);
    assert_eq!(p1z(&["theta", "--a", "1/0", "--b", "1"]).0, 2);
    assert_eq!(p1z(&["theta", "--a", "1"]).0, 2);
    assert_eq!(p1z(&["frobnicate"]).0, 2);
    assert_eq!(
        p1z(&["theta", "--a", "1", "--b", "1", "--format", "csv"]).0,
        2
    );
    assert_eq!(p1z(&["sections", "--a", "1", "--b", "1", "--n", "0"]).0, 2);
}

#[test]
fn nonpositive_parameter_is_domain_error() {
    let (code, v) = json(&["theta", "--a", "-1", "--b", "1"]);
    assert_eq!(code, 3);
    assert!(v["payload"].is_null());
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("selfint.json");
    let code = p1z_cli::run([
        "p1z",
        "selfint",
        "--a",
        "2",
        "--b",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "selfint");

    let bad = dir.path().join("missing").join("x.json");
    assert_eq!(
        p1z_cli::run([
            "p1z",
            "selfint",
            "--a",
            "2",
            "--b",
            "3",
            "--out",
            bad.to_str().unwrap()
        ]),
        1
    );
}

#[test]
fn tol_flag() {
    let (code, v) = json(&["theta", "--a", "0.7", "--b", "0.6", "--tol", "1e-6"]);
    assert_eq!(code, 0);
    assert!(f(&v["payload"]["theta"]["solver_tol"]) <= 1e-6);
    assert_eq!(p1z(&["theta", "--a", "1", "--b", "1", "--tol", "-1"]).0, 2);
}
