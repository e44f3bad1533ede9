use std::process::{Command, Output};

use reglab::numeric::{printed_ulp_distance, Float, Precision};
use serde_json::Value;

fn reglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reglab"))
        .args(args)
        .env_remove("REGLAB_PREC")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = reglab(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn strs(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

fn decimal(v: &Value) -> Float {
    let prec = Precision::default();
    prec.float(Float::parse(v.as_str().unwrap()).unwrap())
}

#[test]
fn eisenstein_expansions() {
    let v = json(&["eisenstein", "--N", "5"]);
    assert_eq!(strs(&v["result"]["e3a"]["coefficients"]), ["1", "-9", "27", "-9", "-117"]);
    assert_eq!(strs(&v["result"]["e3b"]["coefficients"]), ["1", "3", "9", "13", "24"]);
    let v = json(&["eisenstein", "--j", "1", "--l", "5", "--N", "3"]);
    assert_eq!(strs(&v["result"]["a"])[..2], ["1", "-12/5"]);
    assert_eq!(strs(&v["result"]["b"])[..2], ["1", "-12"]);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["eisenstein", "--j", "0", "--l", "5"][..],
        &["eisenstein", "--j", "1"],
        &["--prec", "10", "families"],
        &["--terms", "4", "families"],
        &["periods"],
        &["classify", "--family", "vi"],
        &["regulator", "--l", "9"],
        &["gm-connection", "--g2", "1,x"],
    ] {
        assert_eq!(reglab(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn regulator_for_five() {
    let v = json(&["regulator", "--l", "5"]);
    let r = &v["result"];
    assert!(printed_ulp_distance(&decimal(&r["reg_value"]), "0.346139631939354").unwrap() <= 1);
    assert_eq!(r["ext_dim"], 1);
    assert_eq!(r["matrix_a"].as_array().unwrap().len(), 3);
    assert_eq!(r["periods"]["I"]["1"].as_str().unwrap()[..16], *"0.42745977255318");
    assert_eq!(v["config"]["digits"], 60);
}

#[test]
fn extrapolated_levels_raise_a_flag() {
    let out = reglab(&["regulator", "--l", "11", "--prec", "30"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["extrapolated"], true);
    assert!(!v["flags"].as_array().unwrap().is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("extrapolated"));
    let quiet = reglab(&["regulator", "--l", "11", "--prec", "30", "--quiet"]);
    assert_eq!(quiet.status.code(), Some(1));
    assert!(quiet.stderr.is_empty());
}

#[test]
fn both_methods_agree() {
    let v = json(&["periods", "--l", "7", "--method", "both", "--prec", "30"]);
    let dev = decimal(&v["result"]["max_relative_deviation"]);
    assert!(dev < 1e-9);
    let series = &v["result"]["series"];
    assert_eq!(series["I"].as_object().unwrap().len(), 6);
    let keys: Vec<&String> = series["J"].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["1", "2", "3", "4", "5", "6"]);
    assert!(series["err_estimate"]["I"]["6"].as_str().unwrap().contains('e'));
}

#[test]
fn classify_catalog_family() {
    let v = json(&["classify", "--family", "iii", "--l", "5"]);
    let r = &v["result"];
    assert_eq!((r["h20"].as_i64(), r["b2"].as_i64()), (Some(1), Some(22)));
    assert_eq!(r["fiber_at_0"], "I_15");
    assert_eq!(r["invariants"]["h"], 3);
}

#[test]
fn classify_reports_violations() {
    let out = reglab(&["classify", "--family", "custom", "--g2", "4", "--g3", "1,-2", "-q"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["admissible"], false);
    assert_eq!(v["result"]["violations"][0]["condition"], "E1");
}

#[test]
fn connection_of_the_additive_example() {
    let v = json(&["gm-connection", "--g2", "0", "--g3", "0,-4"]);
    let r = &v["result"];
    assert_eq!(r["matches_closed_form"], true);
    assert_eq!(r["trace"], "0");
    let at_zero = &r["residues"][0];
    assert_eq!(at_zero["reduction"], "additive");
    assert_eq!(at_zero["eigenvalues_in_unit_interval"], true);
    let v = json(&["gm-connection", "--f", "1; 0,1; 0; 0; 0; 1", "--genus", "2"]);
    assert_eq!(v["result"]["matrix"].as_array().unwrap().len(), 4);
}

#[test]
fn families_and_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_reglab"))
        .args(["families", "list"])
        .env("REGLAB_PREC", "25")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["digits"], 25);
    assert_eq!(v["result"]["catalog"].as_array().unwrap().len(), 5);
    assert_eq!(strs(&v["result"]["modular"]["g2"]), ["108", "-96"]);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["periods", "--l", "5", "--method", "both", "--prec", "30"];
    assert_eq!(reglab(&args).stdout, reglab(&args).stdout);
}

#[test]
fn table_format() {
    let out = reglab(&["--format", "table", "classify", "--family", "i", "--l", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("config.format") && l.ends_with("table")));
    assert!(text.lines().any(|l| l.starts_with("result.h20")));
}
