use std::process::{Command, Output};

use serde_json::Value;

fn apolar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apolar")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = apolar(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn hilbert_of_x3y() {
    let v = json(&["hilbert", "--vars", "2", "x1^[3]*x2"]);
    assert_eq!(v["results"]["hilbert"], serde_json::json!([1, 2, 2, 2, 1]));
    assert_eq!(v["results"]["apolar_dim"], 8);
}

#[test]
fn golden_commands_match() {
    for which in ["13331", "1222111", "char2"] {
        let v = json(&["golden", which]);
        assert_eq!(v["command"], format!("golden {which}"));
    }
}

#[test]
fn unipotent_perp_of_third_leading_form() {
    let v = json(&["perp", "--unip", "--max-deg", "3", "--vars", "3", "x^[3]*y + x^[2]*z^[2]"]);
    let els = v["results"]["basis"]["elements"].as_array().unwrap();
    assert_eq!(els.len(), 3);
    assert!(els.contains(&Value::from("a2^3")));
}

#[test]
fn exit_codes() {
    assert_eq!(apolar(&["hilbert", "x^[2"]).status.code(), Some(1));
    assert_eq!(apolar(&["--field", "fp:4", "hilbert", "x"]).status.code(), Some(1));
    assert_eq!(apolar(&["dense-test", "x^[3] + y"]).status.code(), Some(2));
    assert_eq!(apolar(&["golden", "1222111", "x^[6] + y^[2]"]).status.code(), Some(2));
}

#[test]
fn classical_input_is_converted() {
    let v = json(&["--mode", "classical", "hilbert", "x^4"]);
    assert_eq!(v["results"]["poly"], "24*x1^[4]");
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn printed_polynomials_parse_back() {
    let src = "x^[3]*y + x^[2]*z^[2] + 1/2*y^[3] - z";
    let printed = json(&["hilbert", src])["results"]["poly"].as_str().unwrap().to_string();
    let again = json(&["hilbert", &printed]);
    assert_eq!(again["results"]["poly"], printed.as_str());
}

#[test]
fn char_two_orbit_dimension_downgrades() {
    let v = json(&["--field", "fp:2", "orbit-dim", "x*y^[2]"]);
    assert_eq!(v["results"]["orbit_dim"], Value::Null);
    assert_eq!(v["results"]["tangent_dim"], 7);
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}
