use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn mfxyz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfxyz"))
        .args(args)
        .env_remove("MFXYZ_CONFIG")
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mfxyz"))
        .args(args)
        .env_remove("MFXYZ_CONFIG")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn ok_json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = mfxyz(&all);
    assert_eq!(
        code(&o),
        0,
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    json_of(&o)
}

#[test]
fn convert_loop_to_band() {
    let v = ok_json(&[
        "word",
        "convert",
        "--kind",
        "loop",
        r#"{"word":[3,-2,2],"param":{"laurent":{"1":"1"}},"rank":1}"#,
    ]);
    assert_eq!(v["kind"], "band");
    assert_eq!(v["word"], json!([2, -3, 1]));
    assert_eq!(v["param"], json!({ "laurent": { "1": "-1" } }));
    assert_eq!(v["rank"], 1);
}

#[test]
fn convert_accepts_flags_and_inverts() {
    let v = ok_json(&[
        "word", "convert", "--kind", "band", "--word", "2,-3,1", "--param", "-lambda",
    ]);
    assert_eq!(v["kind"], "loop");
    assert_eq!(v["word"], json!([3, -2, 2]));
    assert_eq!(v["param"], json!({ "laurent": { "1": "1" } }));
}

#[test]
fn normalize_with_trace() {
    let v = ok_json(&["word", "normalize", "[-3,0,-2,0,2,0]"]);
    let normal: Vec<i32> = serde_json::from_value(v["normal"].clone()).unwrap();
    let target = [-2, 1, -1, 0, 2, 0];
    let rotations: Vec<Vec<i32>> = (0..2)
        .map(|k| [&target[3 * k..], &target[..3 * k]].concat())
        .collect();
    assert!(rotations.contains(&normal), "{normal:?}");
    assert!(!v["trace"]["moves"].as_array().unwrap().is_empty());
}

#[test]
fn periodicity() {
    assert_eq!(
        ok_json(&["word", "periodicity", "[2,2,2,2,2,2]"]),
        json!({ "base": [2, 2, 2], "N": 2 })
    );
    assert_eq!(
        ok_json(&["word", "periodicity", "3,-2,2"]),
        json!({ "base": [3, -2, 2], "N": 1 })
    );
}

#[test]
fn flip_and_shift() {
    let f = ok_json(&[
        "word", "flip", "--kind", "loop", "--word", "3,-2,2", "--param", "-lambda",
    ]);
    assert_eq!(f["word"], json!([-2, 3, -1]));
    let d = ok_json(&["word", "flip", "--kind", "band", "--word", "2,-3,1"]);
    assert_eq!(d["word"], json!([-2, 3, -1]));
    assert_eq!(d["param"], json!({ "laurent": { "-1": "1" } }));
    let s = ok_json(&["word", "shift", "--word", "2,-3,1"]);
    assert_eq!(s["result"]["param"], json!({ "laurent": { "-1": "-1" } }));
}

#[test]
fn build_phi_text_and_json() {
    let o = mfxyz(&[
        "build", "phi", "--word", "3,-2,2", "--lambda", "1", "--rank", "1",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("phi (3×3)"), "{text}");
    assert!(text.contains("-x^2"), "{text}");
    let v = ok_json(&["build", "phi", "--word", "3,-2,2", "--lambda", "1"]);
    assert_eq!(
        (v["phi"]["rows"].as_u64(), v["phi"]["cols"].as_u64()),
        (Some(3), Some(3))
    );
    assert_eq!(v["verified"], true);
    assert_eq!(
        v["phi"]["entries"][0],
        json!([{ "exp": [0, 0, 1], "coef": { "laurent": { "0": "1" } } }])
    );
}

#[test]
fn build_psi_polynomial_and_series() {
    let v = ok_json(&["build", "psi", "--word", "3,-2,2", "--lambda", "2"]);
    assert_eq!(v["psi"]["rows"], 3);
    let s = ok_json(&[
        "--degree", "6", "build", "psi", "--word", "-3,-3,-3", "--lambda", "2",
    ]);
    assert_eq!(s["truncated_at"], 6);
    assert!(s.get("unit").is_some());
}

#[test]
fn build_degenerate_pair() {
    let v = ok_json(&["build", "deg", "--tau", "1", "--lambda", "1", "--rank", "2"]);
    for k in ["phi", "psi"] {
        assert_eq!(
            (v[k]["rows"].as_u64(), v[k]["cols"].as_u64()),
            (Some(8), Some(8))
        );
    }
    let r = ok_json(&["build", "deg-reduced", "--lambda", "1", "--rank", "2"]);
    assert_eq!(r["phi"]["rows"], 7);
    let bad = mfxyz(&["build", "deg-reduced", "--lambda", "2", "--rank", "2"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn build_theta_trivial_word() {
    let v = ok_json(&[
        "build", "theta", "--word", "0,0,0", "--lambda", "1", "--mult", "1",
    ]);
    let maps = v.as_object().unwrap();
    assert_eq!(maps.len(), 6);
    for m in maps.values() {
        assert_eq!((m["rows"].as_u64(), m["cols"].as_u64()), (Some(1), Some(1)));
    }
    let g = ok_json(&["build", "generators", "--word", "0,0,0", "--lambda", "1"]);
    assert_eq!(g["rank"], 1);
}

#[test]
fn check_suites_pass() {
    for args in [
        vec!["check", "reference-vectors"],
        vec!["check", "properties", "--count", "10"],
        vec![
            "check",
            "decompose",
            "--word",
            "3,-2,2",
            "--N",
            "2",
            "--lambda",
            "4",
        ],
        vec![
            "check",
            "reductions",
            "--tau",
            "1",
            "--lambda",
            "2",
            "--rank",
            "1",
        ],
        vec!["check", "bandmod", "--mu", "3"],
    ] {
        let v = ok_json(&args);
        assert_eq!(v["failed"], 0, "{args:?}");
        for r in v["reports"].as_array().unwrap() {
            assert_eq!(r["status"], "pass", "{r}");
        }
    }
}

#[test]
fn numeric_decompose_needs_no_exact_roots() {
    let exact = mfxyz(&[
        "--json",
        "check",
        "decompose",
        "--word",
        "3,-2,2",
        "--N",
        "2",
        "--lambda",
        "2",
    ]);
    assert_eq!(code(&exact), 1);
    assert_eq!(json_of(&exact)["reports"][0]["status"], "fail");
    let v = ok_json(&[
        "--numeric",
        "check",
        "decompose",
        "--word",
        "3,-2,2",
        "--N",
        "2",
        "--lambda",
        "2",
    ]);
    assert_eq!(v["failed"], 0);
}

#[test]
fn mf_round_trip_through_json() {
    let phi = ok_json(&["mf", "shift", "--word", "3,-2,2", "--lambda", "2"]);
    let text = serde_json::to_string(&phi).unwrap();
    let verify = with_stdin(&["--json", "mf", "verify", "-"], &text);
    assert_eq!(code(&verify), 0);
    assert_eq!(json_of(&verify)["status"], "pass");
    let back = with_stdin(&["--json", "mf", "shift", "-"], &text);
    let again = json_of(&back);
    let direct = ok_json(&["mf", "verify", "--word", "3,-2,2", "--lambda", "2"]);
    assert_eq!(direct["status"], "pass");
    assert_eq!(again["phi"], phi["psi"]);
    assert_eq!(again["psi"], phi["phi"]);
}

#[test]
fn mf_verify_failure_exits_one() {
    let bad = json!({
        "phi": { "rows": 1, "cols": 1, "entries": [[{ "exp": [1, 0, 0], "coef": 1 }]] },
        "psi": { "rows": 1, "cols": 1, "entries": [[{ "exp": [0, 1, 0], "coef": 1 }]] },
    });
    let o = mfxyz(&["--json", "mf", "verify", &bad.to_string()]);
    assert_eq!(code(&o), 1);
    assert_eq!(json_of(&o)["status"], "fail");
    let s = mfxyz(&["mf", "shift", &bad.to_string()]);
    assert_eq!(code(&s), 3);
    assert_eq!(json_of(&s)["error"]["code"], "NotAMatrixFactorization");
}

#[test]
fn mf_transpose_reduce_twist() {
    let t = ok_json(&["mf", "transpose", "--word", "3,-2,2", "--lambda", "2"]);
    assert_eq!(t["phi"]["rows"], 3);
    let deg = ok_json(&["build", "deg", "--tau", "1", "--lambda", "2", "--rank", "2"]);
    let r = ok_json(&["mf", "reduce", &deg.to_string()]);
    assert_eq!(r["phi"]["rows"], 6);
    assert_eq!(r["eliminated"].as_array().unwrap().len(), 2);
    let w = ok_json(&[
        "mf", "twist", "--word", "3,-2,2", "--lambda", "2", "--rank", "3",
    ]);
    assert_eq!(w["maurer_cartan"], true);
    assert_eq!(w["phi"]["rows"], 9);
}

#[test]
fn exit_codes_and_error_json() {
    let malformed = mfxyz(&["word", "normalize", "[1,2"]);
    assert_eq!(code(&malformed), 2);
    assert_eq!(json_of(&malformed)["error"]["code"], "MalformedInput");
    assert!(!malformed.stderr.is_empty());
    let domain = mfxyz(&[
        "word",
        "convert",
        "--kind",
        "band",
        "--word",
        "0,0,0,0,0,0",
        "--param",
        "1",
        "--rank",
        "2",
    ]);
    assert_eq!(code(&domain), 3);
    assert_eq!(json_of(&domain)["error"]["code"], "PeriodicDegenerate");
    let unit = mfxyz(&[
        "word", "convert", "--kind", "loop", "--word", "3,-2,2", "--param", "0",
    ]);
    assert_eq!(code(&unit), 3);
    assert_eq!(code(&mfxyz(&["frobnicate"])), 2);
    assert_eq!(
        code(&mfxyz(&["--tol", "-1", "word", "periodicity", "2,2,2"])),
        2
    );
}

#[test]
fn config_file_from_env() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(
        &path,
        r#"{"format":"json","realization":"numeric","tol":1e-8}"#,
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_mfxyz"))
        .args([
            "check",
            "decompose",
            "--word",
            "3,-2,2",
            "--N",
            "3",
            "--lambda",
            "1",
            "--rank",
            "2",
        ])
        .env("MFXYZ_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(json_of(&o)["failed"], 0);
    std::fs::write(&path, r#"{"colour":"blue"}"#).unwrap();
    let bad = Command::new(env!("CARGO_BIN_EXE_mfxyz"))
        .args(["word", "periodicity", "2,2,2"])
        .env("MFXYZ_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn properties_deterministic_under_seed() {
    let a = mfxyz(&[
        "--json",
        "--seed",
        "11",
        "check",
        "properties",
        "--count",
        "8",
    ]);
    let b = mfxyz(&[
        "--json",
        "--seed",
        "11",
        "check",
        "properties",
        "--count",
        "8",
    ]);
    let c = mfxyz(&[
        "--json",
        "--seed",
        "12",
        "check",
        "properties",
        "--count",
        "8",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn batch_jobs_in_order() {
    let jobs = [
        r#"["word","periodicity","[2,2,2,2,2,2]"]"#,
        r#"{"id":"phi","args":["build","phi","--word","3,-2,2","--lambda","1"]}"#,
        r#"["check","bandmod","--mu","2"]"#,
        r#"{"id":"bad","args":["word","normalize","[1"]}"#,
        r#"["word","convert","--kind","band","--word","0,0,0,0,0,0","--param","1","--rank","2"]"#,
    ]
    .join("\n");
    let o = with_stdin(&["batch", "--jobs", "3"], &jobs);
    assert_eq!(code(&o), 3);
    let lines: Vec<Value> = String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0]["result"], json!({ "base": [2, 2, 2], "N": 2 }));
    assert_eq!(lines[1]["id"], "phi");
    assert_eq!(lines[1]["result"]["phi"]["rows"], 3);
    assert_eq!(lines[2]["exit"], 0);
    assert_eq!(
        (lines[3]["id"].as_str(), lines[3]["exit"].as_u64()),
        (Some("bad"), Some(2))
    );
    assert_eq!(lines[4]["error"]["code"], "PeriodicDegenerate");
    let serial = with_stdin(&["batch"], &jobs);
    let parallel = with_stdin(&["batch", "--jobs", "4"], &jobs);
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn exact_json_round_trips_bit_exactly() {
    let v = ok_json(&[
        "build", "phi", "--word", "3,-2,2", "--lambda", "3/2", "--rank", "2",
    ]);
    let m = json!({ "phi": v["phi"], "psi": ok_json(&["build", "psi", "--word", "3,-2,2", "--lambda", "3/2", "--rank", "2"])["psi"] });
    let t = ok_json(&["mf", "transpose", &m.to_string()]);
    let tt = ok_json(&["mf", "transpose", &t.to_string()]);
    assert_eq!(tt["phi"], m["phi"]);
    assert_eq!(tt["psi"], m["psi"]);
}
