use std::collections::BTreeMap;

use segre_acm::{run_with_cache, Outcome};
use segre_acm_core::{Poly, Rational};
use serde_json::Value;

fn run(args: &[&str]) -> Outcome {
    let argv = std::iter::once("segre-acm").chain(args.iter().copied());
    run_with_cache(argv, None)
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    assert!(out.stderr.is_empty());
    out.stdout
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).expect("valid JSON")
}

/// Commands covering every output shape.
const CORPUS: &[&[&str]] = &[
    &["coh", "O(0)"],
    &["coh", "ext(2*O(-F); 5*O(F-L))", "--range", "-4..2"],
    &["coh", "ext(Omega(L); O(-1))", "--range", "-3..3"],
    &["coh", "Omega(L) + 3*O(-F)", "--twist", "-2"],
    &["coh", "ext(O(-2F); O(0))", "--range", "-2..2"],
    &["table", "ext(O(-2F); O(0))"],
    &["hilb", "O(0,0)"],
    &["hilb", "ext(O(-F); L)"],
    &["chi", "O(F-L)", "O(-F)"],
    &["chi", "Omega(L)", "Omega(L)"],
    &["ext", "O(0)", "Omega(L)"],
    &["ext", "Omega(L)", "Omega(L)(1)"],
    &["ext", "Omega(L)", "Omega(L)(1)", "--tight"],
    &["acm", "O(2F)"],
    &["acm", "O(3F)"],
    &["ulrich", "L"],
    &["ulrich", "O(0)"],
    &["table", "Omega(L)", "--tight"],
    &["table", "ext(O(-F); O(F-L))"],
    &["table", "O(-1)", "--orientation", "b"],
    &["classify", "Omega(L)"],
    &["classify", "O(-1)"],
    &["classify", "ext(2*O(-F); 5*O(F-L))"],
    &["classify", "O(3F)"],
    &["uk", "3"],
    &["uk", "-3"],
    &["uk", "40"],
    &["scroll", "--degrees", "1,2", "coh", "-1", "0"],
    &["scroll", "--degrees", "1,1,1", "coh", "2", "1"],
    &["scroll", "--degrees", "2,3", "coh", "-4", "1"],
    &["scroll", "ell", "3", "4"],
    &["scroll", "dimext", "3", "4", "1"],
    &["scroll", "wildcheck", "2", "5"],
    &["wild", "scroll", "3", "4"],
    &[
        "wild", "check", "--n", "2", "--rp-a", "1,1", "--rp-b", "0,1", "--ext1", "3",
    ],
    &[
        "wild",
        "check",
        "--n",
        "1",
        "--rp-a",
        "1,1",
        "--rp-b",
        "0,1",
        "--ext1",
        "5",
        "--a-h0-zero-until",
        "-1",
        "--b-h1-zero-from",
        "2",
    ],
    &["wild", "dp", "quadric", "2", "7", "--deg", "3"],
    &["wild", "dp", "blowup", "2", "3"],
    &["wild", "table", "5", "--cone"],
    &["wild", "table", "3"],
];

#[test]
fn reference_outputs() {
    assert_eq!(ok(&["classify", "Omega(L)"]), "OmegaPiTwist t=0\n");
    let uk = ok(&["uk", "3"]);
    assert_eq!(
        uk.lines().next().unwrap(),
        "a=3 b=8 rank=11 chi_self=1 serre_partner=-2"
    );
    let h = json(&["hilb", "O(0,0)"]);
    // 1/2 (t+1)^2 (t+2)
    assert_eq!(
        h["coefficients"],
        serde_json::json!(["1", "5/2", "2", "1/2"])
    );
    assert_eq!(
        ok(&["hilb", "O(0,0)"]).lines().next().unwrap(),
        "P(t) = 1/2*t^3 + 2*t^2 + 5/2*t + 1"
    );
}

#[test]
fn exit_codes() {
    let parse = run(&["coh", "O(F"]);
    assert_eq!(parse.code, 2);
    assert!(parse.stdout.is_empty());
    assert!(parse.stderr.contains("byte 3"), "{}", parse.stderr);
    assert!(parse.stderr.contains("`)`"), "{}", parse.stderr);

    for args in [
        &["uk", "1000000"][..],
        &["scroll", "ell", "1", "1"],
        &["ext", "ext(O(-F); L)", "O(0)"],
        &["wild", "dp", "quadric", "0", "1"],
        &["wild", "table", "2"],
    ] {
        let out = run(args);
        assert_eq!(out.code, 1, "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(out.stderr.starts_with("error: "), "{args:?}");
    }

    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["coh"]).code, 2);
    assert_eq!(run(&["coh", "O(0)", "--range", "3..1"]).code, 2);
    assert_eq!(run(&["scroll", "coh", "0", "0"]).code, 2);
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("classify"));
}

#[test]
fn output_is_deterministic() {
    for args in CORPUS {
        assert_eq!(run(args), run(args), "{args:?}");
        let mut j = vec!["--json"];
        j.extend_from_slice(args);
        assert_eq!(run(&j), run(&j), "{args:?}");
    }
}

#[test]
fn json_flag_position_is_free() {
    let front = ok(&["--json", "uk", "5"]);
    let back = ok(&["uk", "5", "--json"]);
    assert_eq!(front, back);
}

#[test]
fn range_is_ascending_one_record_per_twist() {
    let v = json(&["coh", "O(-F)", "--range", "-3..3"]);
    let twists: Vec<i64> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["twist"].as_i64().unwrap())
        .collect();
    assert_eq!(twists, (-3..=3).collect::<Vec<_>>());
    assert_eq!(ok(&["coh", "O(-F)", "--range", "-3..3"]).lines().count(), 7);
}

#[test]
fn big_numbers_are_strings() {
    let v = json(&["uk", "60"]);
    let a = v["a"].as_str().unwrap();
    assert!(a.len() > 20, "{a}");
    assert_eq!(
        ok(&["uk", "60"]).split_whitespace().next().unwrap(),
        format!("a={a}")
    );
}

#[test]
fn json_matches_schema() {
    let schema: Value = serde_json::from_str(include_str!("../schema/output.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    for args in CORPUS {
        let v = json(args);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}\n{v}");
    }
    let bogus = serde_json::json!({ "command": "uk", "k": 1 });
    assert!(!validator.is_valid(&bogus));
}

fn key_values(text: &str) -> BTreeMap<String, String> {
    text.split_whitespace()
        .filter_map(|tok| tok.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn assert_key_values(args: &[&str], keys: &[&str]) {
    let text = key_values(&ok(args));
    let v = json(args);
    for k in keys {
        assert_eq!(text.get(*k), Some(&scalar(&v[*k])), "{args:?} key {k}");
    }
}

#[test]
fn text_and_json_agree_on_key_values() {
    for k in ["-7", "0", "3", "25"] {
        assert_key_values(&["uk", k], &["a", "b", "rank", "chi_self", "serre_partner"]);
    }
    assert_key_values(&["scroll", "ell", "4", "6"], &["ell", "chi_l_dual"]);
    assert_key_values(&["scroll", "dimext", "2", "6", "3"], &["dimext"]);
    assert_key_values(
        &["scroll", "wildcheck", "3", "5"],
        &["n", "d", "k", "ell", "sub", "quot", "bound"],
    );
    for args in [
        &["wild", "dp", "quadric", "2", "7", "--deg", "3"][..],
        &["wild", "dp", "blowup", "3", "7"],
        &["wild", "dp", "blowup", "2", "3"],
    ] {
        assert_key_values(
            args,
            &[
                "family_dim",
                "b_threshold",
                "constructible",
                "kernel_chi",
                "non_ulrich",
            ],
        );
    }
    let uk = ok(&["uk", "4"]);
    let class = uk.lines().nth(1).unwrap();
    let v = json(&["uk", "4"]);
    let joined: Vec<String> = v["class"].as_array().unwrap().iter().map(scalar).collect();
    assert_eq!(class, format!("class=({})", joined.join("; ")));
}

/// `(0, 1..3, 0, 0)` into per-degree `(lo, hi)`.
fn parse_cells(s: &str) -> Vec<(String, String)> {
    s.trim_matches(|c| c == '(' || c == ')')
        .split(", ")
        .map(|cell| match cell.split_once("..") {
            Some((lo, hi)) => (lo.to_string(), hi.to_string()),
            None => (cell.to_string(), cell.to_string()),
        })
        .collect()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(scalar).collect()
}

#[test]
fn text_and_json_agree_on_cohomology() {
    for args in CORPUS.iter().filter(|a| a[0] == "coh") {
        let text = ok(args);
        let v = json(args);
        let records = v["records"].as_array().unwrap();
        assert_eq!(text.lines().count(), records.len());
        for (line, rec) in text.lines().zip(records) {
            let (t, h) = line.split_once(" h=").unwrap();
            assert_eq!(t, format!("t={}", rec["twist"]));
            let cells = parse_cells(h);
            let lo = strings(&rec["lo"]);
            let hi = strings(&rec["hi"]);
            for i in 0..4 {
                assert_eq!(cells[i], (lo[i].clone(), hi[i].clone()), "{args:?} {line}");
            }
        }
    }
    for args in CORPUS.iter().filter(|a| a[0] == "ext") {
        let text = ok(args);
        let v = json(args);
        let cells = parse_cells(text.trim().strip_prefix("ext = ").unwrap());
        let (lo, hi) = (strings(&v["lo"]), strings(&v["hi"]));
        for i in 0..4 {
            assert_eq!(cells[i], (lo[i].clone(), hi[i].clone()), "{args:?}");
        }
    }
}

#[test]
fn text_and_json_agree_on_tables() {
    for args in CORPUS.iter().filter(|a| a[0] == "table") {
        let text = ok(args);
        let v = json(args);
        for (i, line) in text.lines().enumerate() {
            let cells: Vec<&str> = line.split_whitespace().skip(1).collect();
            assert_eq!(cells.len(), 6);
            for (j, cell) in cells.iter().enumerate() {
                let lo = scalar(&v["a"][i][j]);
                let hi = scalar(&v["hi"][i][j]);
                let expected = if v["exact"][i][j] == Value::Bool(true) {
                    lo
                } else {
                    format!("{lo}..{hi}")
                };
                assert_eq!(*cell, expected, "{args:?} ({i},{j})");
            }
        }
    }
}

fn poly(v: &Value) -> Poly {
    Poly::new(
        v.as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_str().unwrap().parse::<Rational>().unwrap())
            .collect(),
    )
}

#[test]
fn text_and_json_agree_on_polynomials() {
    for args in CORPUS.iter().filter(|a| a[0] == "hilb") {
        let text = ok(args);
        let v = json(args);
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            format!("P(t) = {}", poly(&v["coefficients"]))
        );
        assert_eq!(
            lines.next().unwrap(),
            format!("rank = {}", scalar(&v["rank"]))
        );
        assert_eq!(
            lines.next().unwrap(),
            format!("reduced(t) = {}", poly(&v["reduced"]))
        );
    }
    for args in CORPUS
        .iter()
        .filter(|a| a[0] == "wild" && a[1] != "dp" && a[1] != "table")
    {
        let text = ok(args);
        let v = json(args);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], scalar(&v["verdict"]));
        assert_eq!(lines[1], format!("rp_a(t) = {}", poly(&v["rp_a"])));
        assert_eq!(lines[2], format!("rp_b(t) = {}", poly(&v["rp_b"])));
        let kv = key_values(lines[3]);
        assert_eq!(kv["ext1"], scalar(&v["ext1"]));
        assert_eq!(kv["ulrich_a"], scalar(&v["ulrich_a"]));
        assert_eq!(kv["ulrich_b"], scalar(&v["ulrich_b"]));
    }
}

#[test]
fn classifier_text_and_json_agree() {
    for args in CORPUS.iter().filter(|a| a[0] == "classify") {
        let text = ok(args);
        let v = json(args);
        let mut words = text.split_whitespace();
        assert_eq!(words.next().unwrap(), scalar(&v["case"]));
        let kv = key_values(&text);
        for (k, val) in kv {
            assert_eq!(val, scalar(&v[k.as_str()]), "{args:?} {k}");
        }
    }
}

#[test]
fn scroll_text_and_json_agree() {
    for args in CORPUS.iter().filter(|a| a[0] == "scroll" && a[3] == "coh") {
        let text = ok(args);
        let v = json(args);
        let h = text.trim().split_once(" h=").unwrap().1;
        let cells: Vec<String> = parse_cells(h).into_iter().map(|c| c.0).collect();
        assert_eq!(cells, strings(&v["h"]), "{args:?}");
    }
}

#[test]
fn wild_verdicts() {
    assert_eq!(
        ok(&["wild", "scroll", "3", "4"]).lines().next(),
        Some("NonUlrichCMWild")
    );
    let curve = json(&[
        "wild", "check", "--n", "1", "--rp-a", "1,1", "--rp-b", "0,1", "--ext1", "5",
    ]);
    assert_eq!(curve["verdict"], "CMWild");
    let low = json(&[
        "wild", "check", "--n", "2", "--rp-a", "1,1", "--rp-b", "0,1", "--ext1", "2",
    ]);
    assert_eq!(low["verdict"], "Inconclusive");
}

#[test]
fn binary_propagates_streams_and_codes() {
    let bin = env!("CARGO_BIN_EXE_segre-acm");
    let run_bin = |args: &[&str]| {
        std::process::Command::new(bin)
            .args(args)
            .env_remove(segre_acm::CACHE_ENV)
            .output()
            .unwrap()
    };
    let good = run_bin(&["uk", "3"]);
    assert_eq!(good.status.code(), Some(0));
    assert_eq!(String::from_utf8(good.stdout).unwrap(), ok(&["uk", "3"]));
    let bad = run_bin(&["classify", "Omega(L"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty() && !bad.stderr.is_empty());
    assert_eq!(run_bin(&["uk", "-999999"]).status.code(), Some(1));
}
