use std::process::Command;

use serde_json::Value;

fn unirat(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_unirat")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8"),
        String::from_utf8(out.stderr).expect("utf8"),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out, _) = unirat(&all);
    (code, serde_json::from_str(&out).expect("valid json"))
}

#[test]
fn subfields_of_x4() {
    let (code, out, _) = unirat(&["subfields", "--vars", "x", "--gens", "x^4"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "[2] x^2");
}

#[test]
fn member_and_trdeg() {
    let (code, out, _) = unirat(&["member", "--vars", "x", "--gens", "x^2", "--elem", "x"]);
    assert_eq!((code, out.trim()), (0, "false"));
    let (code, out, _) = unirat(&["member", "--vars", "x", "--gens", "x^2 + x, x^2 - x", "--elem", "x"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("true"));
    let (code, out, _) = unirat(&["trdeg", "--vars", "x1,x2", "--gens", "x1^2,x1*x2"]);
    assert_eq!((code, out.trim()), (0, "2"));
}

#[test]
fn repeated_and_comma_generators_agree() {
    let a = unirat(&["basis", "--vars", "x1,x2", "--gens", "x1^2,x2^2,x1*x2"]);
    let b = unirat(&["basis", "--vars", "x1,x2", "--gens", "x1^2", "--gens", "x2^2", "--gens", "x1*x2"]);
    assert_eq!(a, b);
    assert_eq!(a.1.lines().collect::<Vec<_>>(), vec!["x1^2", "x2^2"]);
}

#[test]
fn json_schema() {
    let (code, v) = json(&["subfields", "--vars", "x", "--gens", "x^6"]);
    assert_eq!(code, 0);
    for key in ["command", "input", "result", "warnings", "timing_ms"] {
        assert!(v.get(key).is_some(), "missing {}", key);
    }
    assert_eq!(v["command"], "subfields");
    let gens: Vec<&str> =
        v["result"]["fields"].as_array().unwrap().iter().map(|f| f["generators"][0].as_str().unwrap()).collect();
    assert_eq!(gens, vec!["x^3", "x^2"]);
}

#[test]
fn deterministic_output() {
    let args = ["subfields", "--vars", "x", "--gens", "x^2 + 1/x^2", "--format", "json"];
    let strip = |s: String| s.lines().filter(|l| !l.contains("timing_ms")).collect::<Vec<_>>().join("\n");
    let (_, a, _) = unirat(&args);
    let (_, b, _) = unirat(&args);
    assert_eq!(strip(a), strip(b));
}

#[test]
fn other_commands() {
    let (code, out, _) = unirat(&["minpoly", "--vars", "x", "--gens", "x^2", "--elem", "x + 1"]);
    assert_eq!((code, out.trim()), (0, "z^2 - y1 - 2*z + 1"));
    let (code, out, _) = unirat(&["closure", "--vars", "x1,x2", "--gens", "x1^2*x2^2"]);
    assert_eq!((code, out.trim()), (0, "x1*x2"));
    let (code, out, _) = unirat(&["decompose", "--vars", "x", "--elem", "x^4 + 2*x^2"]);
    assert_eq!((code, out.trim()), (0, "u = z^2 + 2*z, h = x^2"));
    let (code, out, _) = unirat(&["subfields", "--vars", "x", "--gens", "x^3"]);
    assert_eq!((code, out.trim()), (0, "no intermediate fields"));
}

#[test]
fn exit_codes() {
    let (code, _, err) = unirat(&["member", "--vars", "x", "--gens", "x^-1", "--elem", "x"]);
    assert_eq!(code, 2);
    assert!(err.contains("syntax"));
    assert_eq!(unirat(&["member", "--vars", "x", "--gens", "y", "--elem", "x"]).0, 2);
    assert_eq!(unirat(&["member", "--vars", "x", "--gens", "x"]).0, 2);
    assert_eq!(unirat(&["frobnicate", "--vars", "x"]).0, 2);
    assert_eq!(unirat(&["subfields", "--vars", "x1,x2", "--gens", "x1 + x2"]).0, 1);
    assert_eq!(unirat(&["closure", "--vars", "x1,x2", "--gens", "x1,x2"]).0, 1);
    assert_eq!(unirat(&["minpoly", "--vars", "x1,x2", "--gens", "x1", "--elem", "x2"]).0, 1);
    assert_eq!(unirat(&["decompose", "--vars", "x", "--elem", "7"]).0, 1);
    let (code, v) = json(&["subfields", "--vars", "x", "--gens", "x^8", "--timeout", "0"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["code"], "timeout");
}

#[test]
fn cap_warning() {
    let (code, v) = json(&["subfields", "--vars", "x", "--gens", "x^8", "--max-block-subsets", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
    let (_, v) = json(&["subfields", "--vars", "x", "--gens", "x^8"]);
    assert!(v["warnings"].as_array().unwrap().is_empty());
}
