mod support;

use std::process::{Command, Output};

use orbit_equiv::catalog::Catalog;
use orbit_equiv::RatPoly;
use serde_json::Value;
use support::schema::Schema;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbit-equiv"))
        .args(args)
        .env_remove("ORBIT_EQUIV_THREADS")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exited")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

const V: &str = "x^5-x^4-4x^3+3x^2+3x-1";

#[test]
fn stated_examples() {
    assert_eq!(stdout(&["disc", V]), "14641");
    assert_eq!(code(&["disc", V]), 0);
    assert_eq!(stdout(&["verify", "--map", "D4", "--source", "V", "--target", "G"]), "true");
    assert_eq!(code(&["verify", "--map", "D4", "--source", "V", "--target", "G"]), 0);
    assert_eq!(stdout(&["verify", "--map", "D4", "--source", "G", "--target", "V"]), "false");
    assert_eq!(code(&["verify", "--map", "D4", "--source", "G", "--target", "V"]), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["disc", "x^^2"]), 2);
    assert_eq!(code(&["disc", "@Nope"]), 2);
    assert_eq!(code(&["disc", V, "--frobnicate"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["verify", "--map", "1/2*x", "--source", "x^2-2", "--target", "1/2*x"]), 2);
    assert_eq!(code(&["iterate-div", "--map", "2-x^2", "--period", "5", "--divisor", "@V"]), 0);
    assert_eq!(code(&["iterate-div", "--map", "2-x^2", "--period", "4", "--divisor", "@V"]), 1);
    assert_eq!(code(&["invert", "--map", "@D1", "--source", "@G", "--target", "@V"]), 1);
    // mixed signatures with distinct fields are outside the numeric search
    assert_eq!(code(&["search", "--source", "x^3-2", "--target", "x^3-3"]), 3);
    assert_eq!(code(&["catalog-check"]), 0);
    assert_eq!(code(&["family-verify"]), 0);
}

#[test]
fn thread_cap() {
    let ok = Command::new(env!("CARGO_BIN_EXE_orbit-equiv"))
        .args(["auto", "@V"])
        .env("ORBIT_EQUIV_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().starts_with("order 5"));
    let bad = Command::new(env!("CARGO_BIN_EXE_orbit-equiv"))
        .args(["disc", V])
        .env("ORBIT_EQUIV_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn help_lists_every_subcommand() {
    let help = stdout(&["--help"]);
    for cmd in [
        "disc", "verify", "search", "invert", "auto", "perm", "compose", "family", "family-verify", "chain", "isolate",
        "iterate-div", "catalog-check",
    ] {
        assert!(help.contains(cmd), "{cmd} missing from --help");
    }
}

#[test]
fn catalog_keys_resolve_with_or_without_at() {
    assert_eq!(stdout(&["disc", "@G"]), stdout(&["disc", "G"]));
    assert_eq!(stdout(&["disc", "[-1,3,3,-4,-1,1]"]), "14641");
    assert_eq!(stdout(&["compose", "--outer", "@G", "--inner", "@D2", "--mod", "@V"]), "0");
}

fn cases() -> Vec<Vec<&'static str>> {
    vec![
        vec!["disc", "@V"],
        vec!["verify", "--map", "@D1", "--source", "@V", "--target", "@G"],
        vec!["verify", "--map", "1/2*x^2", "--source", "x^2-2", "--target", "x-1"],
        vec!["search", "--source", "@V", "--target", "@G"],
        vec!["search", "--source", "x^2-2", "--target", "x^2-3"],
        vec!["invert", "--map", "@I3", "--source", "@G", "--target", "@V"],
        vec!["auto", "@G"],
        vec!["perm", "--map", "@D2", "--source", "@V", "--target", "@G"],
        vec!["compose", "--outer", "@D5", "--inner", "@I5"],
        vec!["compose", "--outer", "2-x^2", "--inner", "1/2*x", "--mod", "x^3-x-1"],
        vec!["family", "P3", "--n", "-7"],
        vec!["family-verify", "--range", "-3..3"],
        vec!["chain", "--base", "@V", "--iters", "6"],
        vec!["chain", "--base", "@V", "--alpha", "2,1/2,-1", "--iters", "3"],
        vec!["isolate", "@G", "--digits", "3"],
        vec!["isolate", "x^3-2"],
        vec!["iterate-div", "--map", "@OrbitMap", "--period", "5", "--divisor", "@V"],
        vec!["catalog-check"],
    ]
}

#[test]
fn json_output_validates_against_the_schema() {
    let schema = Schema::load();
    for args in cases() {
        let doc = json(&args);
        let errors = schema.errors(&doc);
        assert!(errors.is_empty(), "{args:?}: {errors:#?}");
        assert_eq!(doc["command"], args[0]);
    }
}

#[test]
fn schema_rejects_malformed_documents() {
    let schema = Schema::load();
    let good = json(&["disc", "@V"]);
    let mut missing = good.clone();
    missing.as_object_mut().unwrap().remove("discriminant");
    assert!(!schema.errors(&missing).is_empty());
    let mut extra = good.clone();
    extra["surprise"] = Value::Bool(true);
    assert!(!schema.errors(&extra).is_empty());
    let mut wrong = good.clone();
    wrong["discriminant"] = Value::from(14641);
    assert!(!schema.errors(&wrong).is_empty());
    let mut unknown = good;
    unknown["command"] = Value::from("dance");
    assert!(!schema.errors(&unknown).is_empty());
}

/// Every `{text, coeffs}` pair in a document.
fn polys(v: &Value, out: &mut Vec<(String, Vec<String>)>) {
    match v {
        Value::Object(m) => {
            if let (Some(Value::String(t)), Some(Value::Array(c))) = (m.get("text"), m.get("coeffs")) {
                out.push((t.clone(), c.iter().map(|c| c.as_str().unwrap().to_string()).collect()));
            }
            if let (Some(Value::String(t)), Some(Value::Array(c))) = (m.get("map_text"), m.get("map")) {
                out.push((t.clone(), c.iter().map(|c| c.as_str().unwrap().to_string()).collect()));
            }
            m.values().for_each(|x| polys(x, out));
        }
        Value::Array(a) => a.iter().for_each(|x| polys(x, out)),
        _ => {}
    }
}

#[test]
fn printed_polynomials_reparse() {
    let mut seen = 0;
    for args in cases() {
        let mut found = Vec::new();
        polys(&json(&args), &mut found);
        for (text, coeffs) in found {
            let p: RatPoly = text.parse().unwrap_or_else(|e| panic!("{text:?}: {e}"));
            let back: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
            assert_eq!(back, coeffs, "{text}");
            let list: RatPoly = p.to_list_string().parse().unwrap();
            assert_eq!(list, p);
            seen += 1;
        }
    }
    assert!(seen > 50);
}

#[test]
fn permutation_tables_render_one_indexed() {
    let cat = Catalog::builtin();
    for (table, prefix, (s, t)) in [("Table1", "D", ("@V", "@G")), ("Table2", "I", ("@G", "@V"))] {
        for (row, perm) in cat.permutation_table(table).unwrap() {
            assert!(row.starts_with(prefix));
            let key = format!("@{row}");
            let doc = json(&["perm", "--map", &key, "--source", s, "--target", t]);
            let got: Vec<usize> = doc["permutation"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as usize).collect();
            let want: Vec<usize> = perm.iter().map(|i| i + 1).collect();
            assert_eq!(got, want, "{row}");
        }
    }
}

#[test]
fn chain_steps_carry_minimal_polynomials() {
    let doc = json(&["chain", "--base", "@V", "--alpha", "2", "--iters", "10"]);
    let cat = Catalog::builtin();
    let names: Vec<&str> = doc["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            let text = s["minpoly"]["text"].as_str().unwrap();
            cat.name_of(&text.parse().unwrap()).unwrap()
        })
        .collect();
    assert_eq!(names, ["A", "G", "G", "A", "B", "A", "G", "G", "A", "B"]);
    assert_eq!(doc["period"], 5);
    assert_eq!(doc["base_present"], false);
}

#[test]
fn text_and_json_agree() {
    let text = stdout(&["family", "P1", "--n", "-2"]);
    let doc = json(&["family", "P1", "--n", "-2"]);
    assert_eq!(doc["member"]["text"], text.as_str());
    assert_eq!(doc["discriminant"], "14641");
    assert_eq!(text, Catalog::builtin().poly("G").unwrap().to_string());
}
