use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn sunada(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sunada"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    child.wait_with_output().unwrap()
}

fn catalog(name: &str) -> String {
    let out = sunada(&["catalog", name], None);
    assert_eq!(out.status.code(), Some(0));
    String::from_utf8(out.stdout).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_catalog_pairs() {
    for (name, u, v) in [
        ("genus2", "U", "V"),
        ("genus3", "U1", "U2"),
        ("orbifold-h", "U1", "U2"),
    ] {
        let spec = catalog(name);
        let out = sunada(&["verify", "-", "-U", u, "-V", v], Some(&spec));
        assert_eq!(out.status.code(), Some(0), "{name}");
        let report = json(&out);
        assert_eq!(report["gassmann"], true);
        assert_eq!(report["is_sunada_triple"], true);
        assert!(report["conjugator"].is_null());
    }
}

#[test]
fn a_subgroup_with_itself_is_not_sunada() {
    let spec = catalog("genus2");
    let out = sunada(&["verify", "-", "-U", "U", "-V", "U"], Some(&spec));
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["gassmann"], true);
    assert!(report["conjugator"].is_object());
}

#[test]
fn report_genus2() {
    let spec = catalog("genus2");
    let out = sunada(&["report", "-", "-U", "U", "--polygon"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["chi_orb"], serde_json::json!({"num": -2, "den": 1}));
    assert_eq!(r["genus"], 2);
    assert_eq!(r["smooth"], true);
    assert_eq!(r["polygon"]["relator"]["passed"], true);
}

#[test]
fn report_orbifold_lists_cone_points() {
    let spec = catalog("orbifold-h");
    let out = sunada(&["report", "-", "-U", "U1"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["smooth"], false);
    let points = r["cone_points"].as_array().unwrap();
    assert!(!points.is_empty());
    assert!(points.iter().all(|p| p["order"] == 2));
}

#[test]
fn graph_formats() {
    let spec = catalog("genus2");
    let out = sunada(&["graph", "-", "-U", "U", "--labels", "a,b,c"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("->").count(), 36);

    let out = sunada(&["graph", "-", "-U", "V", "--format", "json"], Some(&spec));
    let g = json(&out);
    assert_eq!(g["vertices"], 12);
    assert_eq!(g["arcs"].as_array().unwrap().len(), 24);
}

#[test]
fn spectra_of_the_pair_agree() {
    let spec = catalog("genus2");
    let su = json(&sunada(&["spectrum", "-", "-U", "U"], Some(&spec)));
    let sv = json(&sunada(&["spectrum", "-", "-U", "V"], Some(&spec)));
    let (a, b) = (
        su["eigenvalues"].as_array().unwrap(),
        sv["eigenvalues"].as_array().unwrap(),
    );
    assert_eq!(a.len(), 12);
    for (x, y) in a.iter().zip(b) {
        assert!((x.as_f64().unwrap() - y.as_f64().unwrap()).abs() <= 1e-9);
    }
}

#[test]
fn search_emits_json_lines() {
    let spec = catalog("genus2");
    let out = sunada(&["search", "-", "--order", "8", "--smooth"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!lines.is_empty());
    for l in &lines {
        assert_eq!(l["u"].as_array().unwrap().len(), 8);
        assert_eq!(l["report"]["is_sunada_triple"], true);
    }
}

#[test]
fn output_is_byte_stable() {
    let spec = catalog("genus3");
    for args in [
        &["verify", "-", "-U", "U1", "-V", "U2"][..],
        &["spectrum", "-", "-U", "U1"][..],
        &["search", "-", "--order", "8"][..],
    ] {
        let first = sunada(args, Some(&spec));
        let second = sunada(args, Some(&spec));
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
    assert_eq!(catalog("genus3"), spec);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = dir.path().join("g2.json");
    std::fs::write(&spec_path, catalog("genus2")).unwrap();
    let out_path = dir.path().join("report.json");
    let out = sunada(
        &[
            "report",
            spec_path.to_str().unwrap(),
            "-U",
            "V",
            "--out",
            out_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(r["genus"], 2);
}

#[test]
fn input_errors_exit_2() {
    let spec = catalog("genus2");
    let cases: [(&[&str], Option<&str>); 6] = [
        (&["frobnicate"], None),
        (&["verify", "-", "-U", "U", "-V", "W"], Some(&spec)),
        (&["verify", "-", "-U", "U", "-V", "V"], Some("{not json")),
        (
            &["verify", "/nonexistent/spec.json", "-U", "U", "-V", "V"],
            None,
        ),
        (&["catalog", "genus9"], None),
        (&["spectrum", "-", "-U", "U", "--tol", "0"], Some(&spec)),
    ];
    for (args, stdin) in cases {
        let out = sunada(args, stdin);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_exits_0() {
    let out = sunada(&["--help"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("search"));
}
