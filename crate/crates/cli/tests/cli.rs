use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn slinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = slinv(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn err_json(args: &[&str], code: i32) -> Value {
    let out = slinv(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert!(out.stdout.is_empty());
    let text = String::from_utf8(out.stderr).unwrap();
    assert_eq!(
        text.trim().lines().count(),
        1,
        "error must be one line: {text}"
    );
    serde_json::from_str(&text).expect("stderr is JSON")
}

fn write_input(name: &str, v: &Value) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path
}

#[test]
fn bcoeff_row() {
    assert_eq!(
        ok_json(&["bcoeff", "--n", "1", "--k", "1"]),
        json!({"values": ["1", "-1"]})
    );
    assert_eq!(
        ok_json(&["bcoeff", "--n", "1", "--k", "1", "--i", "1"]),
        json!({"value": "-1"})
    );
}

#[test]
fn cg_single_entry() {
    assert_eq!(
        ok_json(&["cg", "--m", "2", "--n", "2", "--p", "2", "--u", "1", "--v", "0", "--w", "0"]),
        json!({"value": "-2"})
    );
}

#[test]
fn linv_hilbert_from_file() {
    let input = json!({
        "direction": {"u": ["1"], "u0": "-1"},
        "places": [{"gradients": {"a_1": "1"}}],
    });
    let path = write_input("one-place-q.json", &input);
    let out = ok_json(&[
        "linv",
        "--family",
        "hilbert",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out["value"], json!("-2"));
    let out = ok_json(&[
        "linv",
        "--family",
        "hilbert",
        "--input",
        path.to_str().unwrap(),
        "--compare-theorem",
        "A",
    ]);
    assert_eq!(out["comparison"]["classification"], json!("exact"));
    assert_eq!(out["comparison"]["theorem_value"], json!("-2"));
}

#[test]
fn linv_gsp4_sign_flip() {
    let input = json!({
        "direction": {"u": ["3", "1"], "u0": "0"},
        "places": [{"gradients": {"a_1": "5", "a_2": "2"}}],
    })
    .to_string();
    let out = ok_json(&[
        "linv",
        "--family",
        "gsp4_spin",
        "--input",
        &input,
        "--compare-theorem",
        "B",
    ]);
    assert_eq!(out["value"], json!("-7"));
    assert_eq!(out["comparison"]["theorem_value"], json!("7"));
    assert_eq!(out["comparison"]["classification"], json!("sign_flip"));
}

#[test]
fn singular_direction_exits_3() {
    let input = json!({
        "direction": {"u": ["2", "1"], "u0": "0"},
        "places": [{"gradients": ["1", "1"]}],
    })
    .to_string();
    let e = err_json(&["linv", "--family", "gsp4_spin", "--input", &input], 3);
    assert_eq!(e["error"]["kind"], json!("singular_direction"));
    assert_eq!(e["error"]["place"], json!(0));
}

#[test]
fn input_errors_exit_2() {
    let e = err_json(&["linv", "--family", "hilbert", "--input", "{not json"], 2);
    assert_eq!(e["error"]["kind"], json!("parse"));
    err_json(&["frobnicate"], 2);
    err_json(&["bcoeff", "--n", "1", "--k", "2"], 2);
    err_json(&["hecke", "--g", "2", "--t", "1;0"], 2);
    err_json(
        &[
            "linv",
            "--family",
            "hilbert",
            "--input",
            "/nonexistent/input.json",
        ],
        2,
    );
    err_json(&["phin", "--case", "steinberg", "--n", "2", "--L", "0"], 2);
    err_json(&["obstruction", "--exponents", "1,0", "--format", "csv"], 2);
}

#[test]
fn csv_tables() {
    let out = slinv(&["bcoeff", "--n", "3", "--k", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,k,i,value");
    assert_eq!(lines.len(), 5);
    let out = slinv(&[
        "cg", "--m", "2", "--n", "2", "--p", "2", "--table", "--format", "csv",
    ]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("u,v,w,value\n"));
}

#[test]
fn tables_are_deterministic_and_sorted() {
    let args = ["cg", "--m", "3", "--n", "2", "--p", "3", "--table"];
    let a = slinv(&args).stdout;
    assert_eq!(a, slinv(&args).stdout);
    let v: Value = serde_json::from_slice(&a).unwrap();
    let keys: Vec<(u64, u64, u64)> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["u"].as_u64().unwrap(),
                e["v"].as_u64().unwrap(),
                e["w"].as_u64().unwrap(),
            )
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

/// Rationals are strings that read back as `num` or `num/den`.
fn all_rationals_parse(v: &Value) -> bool {
    match v {
        Value::String(s) => {
            let mut parts = s.splitn(2, '/');
            let num_ok = parts.next().is_some_and(|n| n.parse::<i128>().is_ok());
            num_ok && parts.next().is_none_or(|d| d.parse::<u128>().is_ok())
        }
        Value::Array(xs) => xs.iter().all(all_rationals_parse),
        Value::Object(m) => m
            .iter()
            .all(|(k, x)| k == "coordinates" || k == "t" || all_rationals_parse(x)),
        _ => true,
    }
}

#[test]
fn outputs_round_trip() {
    let runs: Vec<Vec<&str>> = vec![
        vec!["bcoeff", "--n", "6", "--k", "2"],
        vec![
            "project-endo",
            "--n",
            "3",
            "--k",
            "1",
            "--diag",
            "[\"1\",\"0\",\"-2\",\"5/3\"]",
        ],
        vec![
            "phin",
            "--case",
            "steinberg",
            "--n",
            "3",
            "--L",
            "2/7",
            "--all-submodules",
        ],
        vec![
            "phin",
            "--case",
            "crystalline_split",
            "--n",
            "2",
            "--k",
            "4",
            "--benois",
        ],
        vec![
            "phin",
            "--case",
            "crystalline_nonsplit",
            "--n",
            "2",
            "--gr1",
        ],
        vec!["phin", "--case", "steinberg", "--n", "1"],
        vec!["hecke", "--g", "2", "--t", "0,-1;-2", "--all"],
        vec!["obstruction", "--exponents", "3,2,1,0", "--check-N", "60"],
    ];
    for args in runs {
        let v = ok_json(&args);
        let again: Value = serde_json::from_str(&v.to_string()).unwrap();
        assert_eq!(v, again);
        assert!(all_rationals_parse(&v), "{args:?}: {v}");
    }
}

#[test]
fn hecke_and_recovery() {
    let v = ok_json(&["hecke", "--g", "2", "--t", "0,0;-1"]);
    assert_eq!(
        v["eigenvalues"][0]["value"],
        json!({"p": "-3/2", "sigma": "-1"})
    );
    let all = ok_json(&["hecke", "--g", "2", "--t", "1,0;1", "--all"]);
    assert_eq!(all["eigenvalues"].as_array().unwrap().len(), 8);
    let weights = r#"{"mu":["3","1"],"mu0":"2"}"#;
    let rec = ok_json(&[
        "recover-chi",
        "--g",
        "2",
        "--eigs",
        r#"[{"x":"1"},{"y":"1"}]"#,
        "--weights",
        weights,
    ]);
    assert!(rec["chi"].as_array().unwrap().len() == 2 && rec["sigma"].is_object());
}

#[test]
fn slope_and_obstruction() {
    let h = ok_json(&[
        "slope",
        "--family",
        "hilbert",
        "--input",
        r#"{"k":[4],"w":-2,"slopes":["5/2"]}"#,
    ]);
    assert_eq!(h, json!({"noncritical": true}));
    let gsp = r#"{"t":"3,1;2","places":[{"mu":["4","2"],"mu0":"6","slope":"5"}]}"#;
    let g = ok_json(&["slope", "--family", "gsp", "--input", gsp]);
    assert_eq!(g["noncritical"], json!(false));
    assert!(g["twist"].is_i64());
    let o = ok_json(&["obstruction", "--exponents", "3,2,1,0", "--check-N", "60"]);
    assert_eq!(
        o,
        json!({"orders": [1, 2, 3, 4], "unconditional": false, "check_N": 60, "sufficient": true})
    );
}

#[test]
fn help_exits_zero() {
    assert!(slinv(&["--help"]).status.success());
}
