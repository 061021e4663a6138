use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], input: &Value) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_twoop"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.to_string().as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn report(args: &[&str], input: &Value) -> Value {
    let (code, out) = run(args, input);
    assert_eq!(code, 0, "{args:?}: {out}");
    serde_json::from_str(&out).unwrap()
}

fn unit_category() -> Value {
    json!({"objects":["x"],"homs":{"x,x":{"field":"Q","dims":{"0":1},"d":{}}},"comp":{"x,x,x":[[1]]},"units":{"x":[1]}})
}

#[test]
fn contractible_two_by_two() {
    let r = report(&["verify-contractible", "--bound", "6", "--json"], &json!({"columns":[2,2]}));
    assert_eq!(r, json!({"H0":1,"higher":0,"exhausted":true}));
    let r = report(&["verify-contractible", "--json"], &json!({"columns":[3,1,2],"J":2}));
    assert_eq!(r, json!({"H0":1,"higher":0,"exhausted":true}));
}

#[test]
fn globe_with_two_colors_has_three_elements() {
    let r = report(&["enum-seq"], &json!({"shape":{"columns":[2]},"inputs":{"0,0":2},"output":2}));
    assert_eq!(r["count"], 3);
    let ws: Vec<Value> = r["elements"].as_array().unwrap().iter().map(|e| e["w"].clone()).collect();
    assert_eq!(ws, vec![json!([0, 0]), json!([0, 1]), json!([1, 1])]);
}

#[test]
fn unit_category_hochschild() {
    assert_eq!(report(&["hochschild", "--json"], &unit_category()), json!({"0":1}));
}

#[test]
fn homology_over_prime_field() {
    let c = json!({"field":"Q","dims":{"0":1,"1":1},"d":{"0":[[2]]}});
    let q = report(&["homology"], &c);
    let f2 = report(&["homology", "--field", "Fp:2"], &c);
    assert_eq!(q["0"], 0);
    assert_eq!(f2["0"], 1);
    assert_eq!(f2["1"], 1);
}

#[test]
fn composing_with_globe_identities_is_trivial() {
    let id = json!({"coloring":{"shape":{"columns":[2]},"inputs":{"0,0":1},"output":1},"element":{"word":[[0,0]],"w":[0]}});
    let map = json!({"src":{"columns":[2]},"dst":{"columns":[2]},"obj":[0,1],"gens":[[[0],[1]]]});
    let r = report(&["compose-seq"], &json!({"map": map, "inner":[id.clone()], "outer": id.clone()}));
    assert_eq!(r, id);
}

#[test]
fn operad_and_action_checks_pass() {
    let r = report(&["verify-operad"], &json!({"shapes":[{"columns":[1]},{"columns":[2]},{"columns":[1,2]}],"max_color":2,"max_output":2}));
    assert_eq!(r["failures"], json!([]));
    assert!(r["element_chains"].as_u64().unwrap() > 1000);
    let r = report(&["verify-action", "--seed", "3"], &json!({"category":"graded","shape":{"columns":[2,2]},"trials":4}));
    assert_eq!(r["pass"], true);
}

#[test]
fn realize_reports_exhaustion() {
    let col = json!({"shape":{"columns":[2,2]},"inputs":{"0,0":1,"1,0":1},"output":2});
    let r = report(&["realize"], &col);
    assert_eq!((r["exhausted"].clone(), r["max_degree"].clone()), (json!(true), json!(2)));
    let cut = report(&["realize", "--bound", "1"], &col);
    assert_eq!(cut["exhausted"], false);
}

#[test]
fn reruns_are_byte_identical() {
    let input = json!({"category":"dual_numbers","shape":{"columns":[1,2]},"trials":3});
    assert_eq!(run(&["verify-action", "--seed", "9"], &input), run(&["verify-action", "--seed", "9"], &input));
}

#[test]
fn errors_have_distinct_codes() {
    assert_eq!(run(&["homology"], &json!("nope")).0, 2);
    assert_eq!(run(&["homology", "--field", "F4"], &json!({"field":"Q","dims":{},"d":{}})).0, 2);
    assert_eq!(run(&["enum-seq", "--bound", "2"], &json!({"shape":{"columns":[3]},"inputs":{"0,0":3,"0,1":3},"output":3})).0, 3);
    assert_eq!(run(&["enum-seq"], &json!({"shape":{"columns":[2]},"inputs":{"0,0":0},"output":1})).0, 4);
    let (code, _) = run(&["homology", "--input", "/nonexistent/x.json"], &json!({}));
    assert_eq!(code, 6);
}
