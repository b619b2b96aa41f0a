use std::io::Write;
use std::process::{Command, Output, Stdio};

fn vortex(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_vortex"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn vortex");
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn sphere(e2: &str) -> String {
    format!(
        r#"{{"manifold": {{"type": "projective_space", "m": 1}}, "weights": [[1]], "tau": ["2"], "e2": "{e2}", "bundles": [{{"degree": 1}}]}}"#
    )
}

fn model_path(name: &str) -> String {
    format!("{}/../../models/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn weak_coupling_sphere_is_not_interior() {
    let out = vortex(&["stability", "-"], Some(&sphere("1")));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["stability"]["interior"], false);
    assert_eq!(v["stability"]["closed_cone"], false);
}

#[test]
fn strong_coupling_sphere_is_interior() {
    let out = vortex(&["stability", "-"], Some(&sphere("100")));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["stability"]["interior"], true);
    assert_eq!(v["sigma"][0]["coeffs"], serde_json::json!(["2/1", "-1/50"]));
}

#[test]
fn floats_are_parse_errors() {
    let out = vortex(&["stability", "-"], Some(&sphere("100").replace("[\"2\"]", "[1.5]")));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1"), "{err}");
    assert!(err.contains("floating-point"), "{err}");
}

#[test]
fn missing_file_is_an_input_error() {
    let out = vortex(&["moduli", "/nonexistent/model.json"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn inconsistent_model_exits_one() {
    let bad = sphere("1").replace("[[1]]", "[[1, 1]]");
    let out = vortex(&["report", "-"], Some(&bad));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn failed_section_exits_one() {
    let out = vortex(&["volume", "-"], Some(&sphere("1")));
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(v["volume"]["error"].is_string());
}

#[test]
fn embedding_of_cp2_into_a_line_is_not_open_dense() {
    let out = vortex(&["embedding", &model_path("embedding_cp2.json")], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["embedding"]["open_dense"], false);
}

#[test]
fn report_is_deterministic_and_round_trips() {
    let path = model_path("abelian_surface.json");
    let a = vortex(&["report", &path], None);
    let b = vortex(&["report", &path], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let report = vortex_moduli::report::parse_report(&text).unwrap();
    assert_eq!(format!("{}\n", report.to_json()), text);
}

#[test]
fn pretty_output_is_text() {
    let out = vortex(&["--pretty", "report", &model_path("sphere_line.json")], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("verdict: stable"), "{text}");
}

#[test]
fn digits_flag_controls_approximations() {
    let out = vortex(&["--digits", "4", "energy", &model_path("sphere_line.json")], None);
    let v = json(&out);
    // approximations truncate toward zero
    assert_eq!(v["energy"]["approx"], "12.5663");
}

#[test]
fn selftest_passes_and_detects_faults() {
    let ok = vortex(&["selftest"], None);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["failed"], 0);
    let bad = vortex(&["selftest", "--inject-fault"], None);
    assert_eq!(bad.status.code(), Some(1));
    assert!(json(&bad)["failed"].as_u64().unwrap() > 0);
}

#[test]
fn selftest_filter() {
    let out = vortex(&["selftest", "--filter", "cones"], None);
    assert_eq!(out.status.code(), Some(0));
    let checks = json(&out)["checks"].as_array().unwrap().clone();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["suite"] == "cones"));
    assert_eq!(
        vortex(&["selftest", "--filter", "no-such-suite"], None).status.code(),
        Some(1)
    );
}
