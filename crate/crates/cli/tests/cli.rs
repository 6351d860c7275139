use std::f64::consts::PI;
use std::process::Command;

use ifsbound::{IfsSystem, Point3, Similitude, Similitude2, Similitude3};
use ifsbound_cli::{parse_ifs, run, serialize_ifs, IfsDocument};
use num_complex::Complex64;
use proptest::prelude::*;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ifsbound").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

fn write_doc(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn bound_circum_cantor() {
    let (code, out, err) = invoke(&["bound", "--method", "circum", "--input", "cantor"]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert_eq!(v["center"], serde_json::json!([0.5, 0.0]));
    assert_eq!(v["radius"], 0.5);
    let order: Vec<usize> = [
        "method",
        "center",
        "radius",
        "slack",
        "lambda_star",
        "mu_star",
        "notes",
    ]
    .iter()
    .map(|k| out.find(&format!("\"{k}\":")).unwrap())
    .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]), "{out}");
}

#[test]
fn verify_reports_negative_slack() {
    let (code, out, err) = invoke(&[
        "verify", "--input", "cantor", "--center", "0.5", "0", "--radius", "0.4",
    ]);
    assert_eq!(code, 1);
    let v = json(&out);
    for s in v["slack"].as_array().unwrap() {
        assert!((s.as_f64().unwrap() + 1.0 / 15.0).abs() < 1e-11);
    }
    assert_eq!(v["contained"], false);
    assert!(err.contains("does not bound"));
}

#[test]
fn auto_falls_back_for_collinear_fixed_points() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_doc(
        &dir,
        "col.json",
        r#"{"dimension":2,"maps":[{"p":[0,0],"phi":[0.5,0]},{"p":[1,0],"phi":[0.5,0]},{"p":[2,0],"phi":[0.5,0]}]}"#,
    );
    let (code, out, _) = invoke(&["bound", "--method", "auto", "--input", &path]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["method"], "general");
    assert!(v["notes"][0].as_str().unwrap().contains("fell back"));

    let (code, out, err) = invoke(&["bound", "--method", "circum", "--input", &path]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("collinear"));
}

#[test]
fn auto_bound_passes_verify() {
    for input in ["cantor", "sierpinski"] {
        let (_, out, _) = invoke(&["bound", "--input", input]);
        let v = json(&out);
        let c: Vec<String> = v["center"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        let r = v["radius"].to_string();
        let (code, _, err) = invoke(&[
            "verify", "--input", input, "--center", &c[0], &c[1], "--radius", &r,
        ]);
        assert_eq!(code, 0, "{input}: {err}");
    }
}

#[test]
fn usage_and_parse_errors_exit_2_with_clean_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_doc(&dir, "bad.json", "{\"dimension\": 2,\n \"maps\": [}");
    let lam = write_doc(
        &dir,
        "lam.json",
        r#"{"dimension":2,"maps":[{"p":[0,0],"lambda":1.0,"theta":0}]}"#,
    );
    let cases: Vec<Vec<&str>> = vec![
        vec!["bound", "--input", &bad],
        vec!["bound", "--input", &lam],
        vec!["bound", "--input", "missing.json"],
        vec!["bound", "--input", "cantor", "--method", "nope"],
        vec![
            "verify", "--input", "cantor", "--center", "0", "0", "0", "--radius", "1",
        ],
        vec![
            "intersect",
            "--input",
            "cantor",
            "--line",
            "0",
            "0",
            "0",
            "0",
        ],
        vec!["frobnicate"],
    ];
    for args in cases {
        let (code, out, err) = invoke(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty());
    }
    let (_, _, err) = invoke(&["bound", "--input", &bad]);
    assert!(err.contains("line 2"), "{err}");
    let (_, _, err) = invoke(&["bound", "--input", &lam]);
    assert!(err.contains("map 0 is not a contraction"), "{err}");
}

#[test]
fn spatial_documents() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_doc(
        &dir,
        "s.json",
        r#"{"dimension":3,"maps":[
            {"p":[0,0,0],"lambda":0.5,"axis":[0,0,1],"angle":0},
            {"p":[1,0,0],"lambda":0.5,"axis":[0,0,1],"angle":0},
            {"p":[0,1,0],"lambda":0.5,"axis":[1,0,0],"angle":0.3},
            {"p":[0,0,1],"lambda":0.5,"axis":[0,1,0],"angle":-0.3}]}"#,
    );
    let (code, out, _) = invoke(&["bound", "--input", &path]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["center"].as_array().unwrap().len(), 3);
    let (code, _, _) = invoke(&["bound", "--method", "circum", "--input", &path]);
    assert_eq!(code, 1);
    let (code, out, _) = invoke(&[
        "intersect",
        "--input",
        &path,
        "--line",
        "0",
        "0",
        "0",
        "1",
        "1",
        "1",
        "--eps",
        "0.01",
    ]);
    assert_eq!(code, 0);
    assert!(!json(&out)["intervals"].as_array().unwrap().is_empty());
    let (code, out, _) = invoke(&["sample", "--input", &path, "--depth", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["points"].as_array().unwrap().len(), 64);
}

#[test]
fn intersect_and_sample() {
    let (code, out, _) = invoke(&[
        "intersect",
        "--input",
        "cantor",
        "--line",
        "0",
        "2",
        "1",
        "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"intervals\":[],\"truncated\":false}\n");

    let (code, out, _) = invoke(&[
        "intersect",
        "--input",
        "cantor",
        "--line",
        "-1",
        "0",
        "1",
        "0",
        "--eps",
        "0.01",
    ]);
    assert_eq!(code, 0);
    let iv = json(&out)["intervals"].as_array().unwrap().clone();
    let first = iv[0][0].as_f64().unwrap();
    let last = iv.last().unwrap()[1].as_f64().unwrap();
    assert!(first <= 1.0 && last >= 2.0);

    let (_, out, _) = invoke(&[
        "sample",
        "--input",
        "sierpinski",
        "--count",
        "10",
        "--seed",
        "3",
    ]);
    assert_eq!(json(&out)["points"].as_array().unwrap().len(), 10);
}

#[test]
fn tighten_reports_coarse_radius() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_doc(
        &dir,
        "bi.json",
        r#"{"dimension":2,"maps":[{"p":[0,0],"phi":[0.5,0]},{"p":[1,0],"phi":[0.25,0]}]}"#,
    );
    let (code, out, _) = invoke(&[
        "tighten", "--input", &path, "--center", "0.5", "0", "--radius", "0.75", "--levels", "1",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["center"], serde_json::json!([0.5625, 0.0]));
    assert_eq!(v["radius"], 0.6875);
    assert!(v["notes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n.as_str().unwrap().starts_with("coarse radius")));
}

#[test]
fn node_budget_from_environment() {
    let exe = env!("CARGO_BIN_EXE_ifsbound");
    let out = Command::new(exe)
        .args(["sample", "--input", "sierpinski", "--depth", "12"])
        .env("IFSBOUND_NODE_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));

    let out = Command::new(exe)
        .args([
            "intersect",
            "--input",
            "sierpinski",
            "--line",
            "0",
            "0.1",
            "1",
            "0",
            "--eps",
            "1e-6",
        ])
        .env("IFSBOUND_NODE_BUDGET", "500")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"truncated\":true"));

    let out = Command::new(exe)
        .args(["bound", "--input", "cantor"])
        .env("IFSBOUND_NODE_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn binary_output_is_deterministic() {
    let exe = env!("CARGO_BIN_EXE_ifsbound");
    let dir = tempfile::tempdir().unwrap();
    let invocations: Vec<Vec<String>> = vec![
        vec!["bound".into(), "--input".into(), "sierpinski".into()],
        vec![
            "tighten".into(),
            "--input".into(),
            "sierpinski".into(),
            "--levels".into(),
            "5".into(),
        ],
        vec![
            "intersect".into(),
            "--input".into(),
            "sierpinski".into(),
            "--line".into(),
            "0".into(),
            "0.2".into(),
            "1".into(),
            "0.1".into(),
        ],
        vec![
            "sample".into(),
            "--input".into(),
            "sierpinski".into(),
            "--count".into(),
            "500".into(),
        ],
        vec![
            "render".into(),
            "--input".into(),
            "sierpinski".into(),
            "--line".into(),
            "0.5".into(),
            "0".into(),
            "0.2".into(),
            "1".into(),
        ],
    ];
    for args in invocations {
        let a = Command::new(exe).args(&args).output().unwrap();
        let b = Command::new(exe).args(&args).output().unwrap();
        assert!(a.status.success(), "{args:?}");
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let files: Vec<_> = (0..2)
        .map(|i| {
            let p = dir.path().join(format!("f{i}.svg"));
            let st = Command::new(exe)
                .args(["render", "--input", "sierpinski", "--out"])
                .arg(&p)
                .output()
                .unwrap();
            assert!(st.status.success() && st.stdout.is_empty());
            std::fs::read(p).unwrap()
        })
        .collect();
    assert_eq!(files[0], files[1]);
    assert!(String::from_utf8_lossy(&files[0]).contains("stroke=\"red\""));
}

fn arb_planar() -> impl Strategy<Value = IfsDocument> {
    prop::collection::vec(
        (-10.0..10.0f64, -10.0..10.0f64, 0.01..0.99f64, -PI..PI),
        1..6,
    )
    .prop_map(|v| {
        let maps = v
            .into_iter()
            .map(|(x, y, l, t)| Similitude2::from_polar(Complex64::new(x, y), l, t).unwrap())
            .collect();
        IfsDocument::Planar(IfsSystem::new(maps).unwrap())
    })
}

fn arb_spatial() -> impl Strategy<Value = IfsDocument> {
    let map = (
        prop::array::uniform3(-10.0..10.0f64),
        0.01..0.99f64,
        prop::array::uniform3(-1.0..1.0f64),
        -PI..PI,
    );
    prop::collection::vec(map, 1..6).prop_map(|v| {
        let maps = v
            .into_iter()
            .map(|(p, l, axis, angle)| {
                let axis = if axis.iter().all(|a| a.abs() < 1e-3) {
                    [0.0, 0.0, 1.0]
                } else {
                    axis
                };
                Similitude3::from_axis_angle(Point3::from(p), l, Point3::from(axis), angle).unwrap()
            })
            .collect();
        IfsDocument::Spatial(IfsSystem::new(maps).unwrap())
    })
}

fn max_param_diff(a: &IfsDocument, b: &IfsDocument) -> f64 {
    match (a, b) {
        (IfsDocument::Planar(x), IfsDocument::Planar(y)) => x
            .maps()
            .iter()
            .zip(y.maps())
            .map(|(m, n)| {
                (m.fixed_point() - n.fixed_point())
                    .norm()
                    .max((m.phi() - n.phi()).norm())
            })
            .fold(0.0, f64::max),
        (IfsDocument::Spatial(x), IfsDocument::Spatial(y)) => x
            .maps()
            .iter()
            .zip(y.maps())
            .map(|(m, n)| {
                (m.fixed_point() - n.fixed_point())
                    .amax()
                    .max((m.lambda() - n.lambda()).abs())
                    .max((m.rotation() - n.rotation()).amax())
            })
            .fold(0.0, f64::max),
        _ => f64::INFINITY,
    }
}

proptest! {
    #[test]
    fn planar_round_trip(doc in arb_planar()) {
        let back = parse_ifs(&serialize_ifs(&doc)).unwrap();
        prop_assert_eq!(back.len(), doc.len());
        prop_assert!(max_param_diff(&doc, &back) <= 1e-12);
    }

    #[test]
    fn spatial_round_trip(doc in arb_spatial()) {
        let back = parse_ifs(&serialize_ifs(&doc)).unwrap();
        prop_assert_eq!(back.len(), doc.len());
        prop_assert!(max_param_diff(&doc, &back) <= 1e-12);
    }
}
