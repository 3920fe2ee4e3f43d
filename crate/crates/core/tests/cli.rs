use gradus::lie::{AlgebraJson, GradedAlgebra};
use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn gradus(args: &[&str]) -> Run {
    gradus_env(args, &[])
}

fn gradus_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gradus"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn ok_json(args: &[&str]) -> Value {
    let r = gradus(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

fn tmp(name: &str, contents: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&v).expect("schema compiles")
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "{name}: {msgs:?}");
}

fn a6_file() -> String {
    let r = gradus(&["catalog", "build", "sl2c-real-z2"]);
    assert_eq!(r.code, 0);
    tmp("a6.json", &r.stdout)
}

#[test]
fn catalog_build_round_trips() {
    let r = gradus(&["catalog", "build", "sl2c-real-z2"]);
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_valid("algebra", &v);
    // emit -> parse -> emit
    assert_eq!(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), r.stdout);
    let mut stripped = v.clone();
    stripped.as_object_mut().unwrap().remove("manifest");
    let j: AlgebraJson = serde_json::from_value(stripped).unwrap();
    let alg = GradedAlgebra::from_json_value(&j).unwrap();
    assert_eq!(alg.to_json_value(), j);
    assert_eq!(alg.dim(), 6);
    assert!(r.stderr.contains("sl2c-real-z2"));
}

#[test]
fn a6_nilorbits_from_files() {
    let a6 = a6_file();
    let h = tmp("a6_h.json", r#"{"algebra": "sl2c-real-z2", "coords": ["1", "0", "0", "0", "0", "0"]}"#);
    let v = ok_json(&["nilorbits", &a6, "--h", &h, "--seed", "7"]);
    assert_valid("nilorbits", &v);
    assert_eq!(v["orbit_count"], 2);
    assert_eq!(v["mode"], "exact");
    let reps: Vec<Value> = v["orbits"].as_array().unwrap().iter().map(|o| o["representative"].clone()).collect();
    let ie = |s: &str| serde_json::json!(["0", "0", "0", "0", s, "0"]);
    assert!(reps.contains(&ie("1")) && reps.contains(&ie("-1")), "{reps:?}");
    assert_eq!(v["manifest"]["seed"], 7);
    assert_eq!(v["manifest"]["input_digests"].as_array().unwrap().len(), 2);
}

#[test]
fn a6_jmv_triple() {
    let a6 = a6_file();
    let v = ok_json(&["jmv", &a6, "iE"]);
    assert_valid("jmv", &v);
    assert_eq!(v["h"], serde_json::json!(["1", "0", "0", "0", "0", "0"]));
    assert_eq!(v["f"], serde_json::json!(["0", "0", "0", "0", "0", "-1"]));
    assert_eq!(v["relations_hold"], true);
}

#[test]
fn every_report_validates() {
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("catalog-list", vec!["catalog", "list"]),
        ("verify", vec!["verify", "sl2c-real-z2"]),
        ("element-analyze", vec!["element", "analyze", "sl2", "E+F"]),
        ("jmv", vec!["jmv", "sl3", "E12+E23"]),
        ("slice", vec!["slice", "sl2", "--h", "H"]),
        ("nilorbits", vec!["nilorbits", "sl2", "--h", "H"]),
        ("z2-describe", vec!["z2", "describe", "sl2-z2-diag", "E+F"]),
        ("z2-compare", vec!["z2", "compare", "sl2-z2-diag", "E+F", "-E-F"]),
        ("z2-compare", vec!["z2", "compare", "sl2-z2-diag", "E+F", "2*E+2*F"]),
        ("kform-analyze", vec!["kform", "analyze", "--model", "e7", "e1234+e5678"]),
        ("kform-analyze", vec!["kform", "analyze", "--model", "e8", "e123"]),
        ("involution-check", vec!["involution", "check", "sl2c-real-z2"]),
        ("involution-improve", vec!["involution", "improve", "sl2", "--perturb", "E-F", "--t", "0,0.25"]),
    ];
    for (name, args) in cases {
        let v = ok_json(&args);
        assert_valid(name, &v);
        assert!(args.join(" ").starts_with(v["manifest"]["command"].as_str().unwrap()));
        let again = serde_json::to_string_pretty(&v).unwrap();
        let reparsed: Value = serde_json::from_str(&again).unwrap();
        assert_eq!(reparsed, v);
    }
}

#[test]
fn z2_verdicts() {
    let v = ok_json(&["z2", "compare", "sl2-z2-diag", "E+F", "-E-F"]);
    assert_eq!(v["verdict"]["verdict"], "conjugate");
    let v = ok_json(&["z2", "compare", "sl2-z2-diag", "E+F", "2*E+2*F"]);
    assert_eq!(v["verdict"]["verdict"], "distinct");
    let r = gradus(&["z2", "compare", "sl2-z2-diag", "E+2*F", "2*E+F", "--strict"]);
    assert_eq!(r.code, 4, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["verdict"]["verdict"], "undecided");
}

#[test]
fn exit_codes() {
    let r = gradus(&["bogus"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("Usage"));
    let r = gradus(&["nilorbits", "sl2", "--h", "H", "--frobnicate"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("Usage"));
    let r = gradus(&["verify", "no-such-algebra"]);
    assert_eq!(r.code, 2);
    let r = gradus(&["jmv", "sl2", "Q"]);
    assert_eq!(r.code, 2, "unknown label is an input error");
    let r = gradus(&["jmv", "sl2", "H"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("nilpotent"));
    assert!(r.stdout.is_empty());
    let r = gradus(&["kform", "analyze", "--model", "e8", "e1234"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("supported"));
    let r = gradus(&["kform", "analyze", "--model", "e8", "e1234+e5678"]);
    assert_eq!(r.code, 2, "a 4-vector belongs to the e7 model");
    let r = gradus(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("nilorbits"));
}

#[test]
fn strict_heuristic_exits_4_and_output_is_deterministic() {
    let j = ok_json(&["jmv", "sl4", "E13+E24"]);
    let h = tmp("sl4_h.json", &serde_json::json!({"algebra": "sl4", "coords": j["h"]}).to_string());
    let args = ["nilorbits", "sl4", "--h", h.as_str(), "--samples", "8", "--seed", "3", "--strict"];
    let a = gradus_env(&args, &[("GRADUS_THREADS", "1")]);
    let b = gradus_env(&args, &[("GRADUS_THREADS", "4")]);
    let c = gradus(&args);
    assert_eq!(a.code, 4);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_valid("nilorbits", &v);
    assert_eq!((v["mode"].as_str(), v["orbit_count"].as_u64()), (Some("heuristic"), Some(2)));
    let no_strict = gradus(&args[..args.len() - 1]);
    assert_eq!(no_strict.code, 0);
}

#[test]
fn timing_is_opt_in() {
    let v = ok_json(&["catalog", "list"]);
    assert!(v["manifest"].get("wall_time_ms").is_none());
    let v = ok_json(&["--timing", "catalog", "list"]);
    assert!(v["manifest"]["wall_time_ms"].is_u64());
    assert_valid("catalog-list", &v);
}

#[test]
fn kform_inputs() {
    let form = tmp("form.json", r#"{"n": 8, "k": 4, "terms": [[[1, 2, 3, 4], "2"]]}"#);
    let v = ok_json(&["kform", "analyze", "--model", "e7", &form, "--dualize"]);
    assert_valid("kform-analyze", &v);
    assert_eq!(v["embedded"]["terms"], serde_json::json!([[[5, 6, 7, 8], "2"]]));
    assert_eq!(v["kind"], "nilpotent");
    assert_eq!(v["gauge"]["scale"], "2");
    let v = ok_json(&["kform", "analyze", "--model", "e8", "e123", "--n", "8"]);
    assert_eq!(v["padded"], true);
    let v = ok_json(&["kform", "analyze", "--model", "e8", "0"]);
    assert_eq!(v["kind"], "zero");
}
