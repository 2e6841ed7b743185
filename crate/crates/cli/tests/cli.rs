use serde_json::Value;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};
use tempfile::TempDir;

fn tapkit(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tapkit"))
        .args(args)
        .env_remove("TAPKIT_TOL")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or_default()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn coeffs(v: &Value) -> Vec<i64> {
    let c = v["coeffs"].as_object().unwrap();
    let top: i64 = c.keys().map(|k| k.parse().unwrap()).max().unwrap();
    (0..=top)
        .map(|e| {
            c.get(&e.to_string())
                .map_or(0, |x| x.as_str().unwrap().parse().unwrap())
        })
        .collect()
}

#[test]
fn build_then_alex_pipeline_is_palindromic() {
    let built = tapkit(&["build", "case3", "--n", "3"], None);
    assert!(built.status.success());
    let alex = tapkit(&["alex"], Some(&built.stdout));
    assert!(alex.status.success());
    let v = json(&alex);
    assert_eq!(v["$schema"], "tapkit.polynomial/1");
    let c = coeffs(&v);
    let mut r = c.clone();
    r.reverse();
    assert_eq!(c, r);
}

#[test]
fn trefoil_compare_with_riley_rep() {
    let o = tapkit(
        &[
            "compare",
            "--family",
            "two-bridge",
            "--m",
            "1,-1",
            "--rep",
            "riley:0",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["agree"], true);
    assert_eq!(v["engine"]["degree"], 2);
    assert_eq!(v["closed_form"]["method"], "recursion");
}

#[test]
fn files_round_trip_through_tap() {
    let dir = TempDir::new().unwrap();
    let (p, r, out) = (
        path(&dir, "p.json"),
        path(&dir, "r.json"),
        path(&dir, "res.json"),
    );
    assert!(
        tapkit(&["build", "two-bridge", "--m", "2,-1", "--out", &p], None)
            .status
            .success()
    );
    assert!(tapkit(&["reps", "riley", "--m", "2,-1", "--out", &r], None)
        .status
        .success());
    let eng = tapkit(
        &["tap", "--presentation", &p, "--rep", &r, "--out", &out],
        None,
    );
    assert!(eng.status.success());
    let e: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let closed = tapkit(
        &[
            "tap",
            "--presentation",
            &p,
            "--rep",
            &r,
            "--method",
            "closed-form",
        ],
        None,
    );
    let c = json(&closed);
    assert_eq!(e["degree"], c["degree"]);
    assert_eq!(e["method"], "engine");
    assert_eq!(c["method"], "recursion");
}

#[test]
fn searched_rep_for_case2_compares() {
    let dir = TempDir::new().unwrap();
    let (p, r) = (path(&dir, "p.json"), path(&dir, "r.json"));
    let b = tapkit(
        &[
            "build", "case2", "--beta1", "-", "--m", "1,2,-1", "--n", "1,2", "--out", &p,
        ],
        None,
    );
    assert!(b.status.success());
    let s = tapkit(
        &[
            "reps",
            "search",
            "--presentation",
            &p,
            "--seeds",
            "300",
            "--out",
            &r,
        ],
        None,
    );
    assert!(s.status.success(), "{}", String::from_utf8_lossy(&s.stderr));
    let o = tapkit(&["compare", "--presentation", &p, "--rep", &r], None);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["prediction"]["quantity"], "kappa0");
    assert_eq!(v["genus_check"]["holds"], true);
}

#[test]
fn malformed_json_exits_two() {
    let o = tapkit(&["alex"], Some(b"{\"generators\": [1,"));
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["$schema"], "tapkit.error/1");
    assert_eq!(v["error"], "invalid-input");
    assert!(v["message"].as_str().unwrap().contains("line"));
}

#[test]
fn invalid_arguments_exit_two() {
    let o = tapkit(&["build", "two-bridge", "--m", "1,0"], None);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["detail"], "spec_invariant_violation");
    let o = tapkit(&["build", "case3"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_tapkit"))
        .args(["alex"])
        .env("TAPKIT_TOL", "abc")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rejected_representation_exits_two() {
    let dir = TempDir::new().unwrap();
    let (p, r) = (path(&dir, "p.json"), path(&dir, "r.json"));
    assert!(
        tapkit(&["build", "two-bridge", "--m", "1,-1", "--out", &p], None)
            .status
            .success()
    );
    let rep = tapkit(&["reps", "riley", "--m", "1,-1"], None);
    let mut v = json(&rep);
    v["a"] = serde_json::json!([["1", "2"], ["0", "1"]]);
    fs::write(&r, v.to_string()).unwrap();
    let o = tapkit(&["tap", "--presentation", &p, "--rep", &r], None);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["detail"], "relator_violation");
}

#[test]
fn closed_form_needs_family() {
    let dir = TempDir::new().unwrap();
    let (p, r) = (path(&dir, "p.json"), path(&dir, "r.json"));
    let built = json(&tapkit(&["build", "two-bridge", "--m", "1,-1"], None));
    let mut bare = built.clone();
    bare.as_object_mut().unwrap().remove("family");
    fs::write(&p, bare.to_string()).unwrap();
    assert!(tapkit(&["reps", "riley", "--m", "1,-1", "--out", &r], None)
        .status
        .success());
    let o = tapkit(
        &[
            "tap",
            "--presentation",
            &p,
            "--rep",
            &r,
            "--method",
            "closed-form",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(tapkit(&["tap", "--presentation", &p, "--rep", &r], None)
        .status
        .success());
}

#[test]
fn sweep_is_deterministic_and_ordered() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "s.jsonl");
    let args = [
        "sweep",
        "--family",
        "two-bridge",
        "--k",
        "1",
        "--values",
        "-2,-1,1,2",
        "--rep",
        "riley",
    ];
    let a = tapkit(&args, None);
    assert_eq!(a.status.code(), Some(0));
    let mut with_file = args.to_vec();
    with_file.extend(["--out", &out, "--jobs", "3"]);
    assert!(tapkit(&with_file, None).status.success());
    assert_eq!(fs::read(Path::new(&out)).unwrap(), a.stdout);
    let lines: Vec<Value> = a
        .stdout
        .split(|b| *b == b'\n')
        .filter(|l| !l.is_empty())
        .map(|l| serde_json::from_slice(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 16);
    assert_eq!(lines[0]["family"]["m"], serde_json::json!([-2, -2]));
    assert!(lines.iter().all(|l| l["agree"] == true));
    assert!(lines.iter().all(|l| l["genus_check"]["holds"] == true));
}

#[test]
fn sweep_caps_grid_size() {
    let o = tapkit(
        &[
            "sweep",
            "--family",
            "two-bridge",
            "--k",
            "5",
            "--max-points",
            "100",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn trivial_case3_sweep_records_fractions() {
    let o = tapkit(&["sweep", "--family", "case3", "--values=-1,0,1"], None);
    assert_eq!(o.status.code(), Some(0));
    for line in String::from_utf8(o.stdout).unwrap().lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["agree"], true);
        assert!(!v["engine"]["denominator"].is_null());
        assert!(v["genus_check"].is_null());
    }
}
