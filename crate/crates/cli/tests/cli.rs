//! End-to-end runs of the `easum` binary.

use std::process::{Command, Output};

use easum_core::mzv::constants::zeta;
use easum_core::report::EvalReport;
use serde_json::Value;

fn easum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_easum"))
        .args(args)
        .env_remove("EASUM_TABLE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn eval_s_1_4_matches_its_closed_form() {
    let o = easum(&["eval", "--family", "s", "--orders", "1", "--p", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["series"], "S:1,4");
    assert!(v["closed_form"]["expr"].as_str().unwrap().contains("Li5h"));
    let value = v["numeric"]["value"].as_f64().unwrap();
    assert!((value - v["closed_form"]["value"].as_f64().unwrap()).abs() <= 1e-8);
    assert!(v["residuals"]["formula_vs_closed_form"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn eval_ts_2_verifies_against_the_oracle() {
    let o = easum(&["eval", "--family", "ts", "--q", "2", "--verify", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["closed_form"]["expr"], "3*z(2)");
    assert!((v["closed_form"]["value"].as_f64().unwrap() - 3.0 * zeta(2)).abs() <= 1e-10);
    assert!(v["residuals"]["formula_vs_closed_form"].as_f64().unwrap() <= 1e-5);
    assert!(v["residuals"]["formula_vs_oracle"].as_f64().unwrap() <= 1e-5);
    assert_eq!(v["oracle"]["tail"], "richardson");
}

#[test]
fn divergent_series_is_a_usage_error() {
    let o = easum(&["eval", "--family", "s", "--orders", "1", "--p", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"]["kind"], "divergent");
    let o = easum(&["eval", "--family", "s", "--orders", "1", "--p", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("diverges"));
}

#[test]
fn bad_arguments_exit_with_two() {
    for args in [
        &["eval", "--family", "nope", "--p", "2", "--format", "json"][..],
        &["eval", "--family", "ts", "--format", "json"],
        &["eval", "--family", "t1", "--q", "2", "--variant", "chen", "--format", "json"],
        &["eval", "--family", "s", "--orders", "2,3", "--p", "1", "--format", "json"],
        &["eval", "--family", "squad", "--p", "1", "--format", "json"],
    ] {
        let o = easum(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(json(&o)["error"]["message"].is_string(), "{args:?}");
    }
}

#[test]
fn key_and_flags_name_the_same_series() {
    let a = stdout(&easum(&["eval", "S:1^2,2", "--format", "json"]));
    let b = stdout(&easum(&["eval", "--family", "s", "--orders", "1,1", "--p", "2", "--format", "json"]));
    assert_eq!(a, b);
    let c = stdout(&easum(&["eval", "Sstar:1*2,2", "--format", "json"]));
    let d = stdout(&easum(&["eval", "--family", "sstar", "--orders", "1", "--m", "2", "--p", "2", "--format", "json"]));
    assert_eq!(c, d);
    let e = stdout(&easum(&["eval", "S:13,2", "--format", "json"]));
    let f = stdout(&easum(&["eval", "--family", "squad", "--m", "3", "--p", "2", "--format", "json"]));
    assert_eq!(e, f);
}

#[test]
fn variants_are_selectable() {
    let a = json(&easum(&["eval", "S:1^3,1", "--variant", "two_one", "--format", "json"]));
    let b = json(&easum(&["eval", "S:1^3,1", "--format", "json"]));
    assert_eq!(a["variant"], "two_one");
    assert_eq!(b["variant"], "six_three_two");
    let d = a["numeric"]["value"].as_f64().unwrap() - b["numeric"]["value"].as_f64().unwrap();
    assert!(d.abs() <= 1e-8);
}

#[test]
fn json_report_round_trips_byte_identically() {
    let o = easum(&["eval", "tS:1,3", "--verify", "--nmax", "20000", "--format", "json"]);
    let text = stdout(&o);
    let report: EvalReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
}

#[test]
fn table_at_weight_two_lists_exactly_five_series() {
    let o = easum(&["table", "--max-weight", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let keys: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["series"].as_str().unwrap()).collect();
    assert_eq!(keys, ["S:2", "S:1,1", "T:1,1", "U:1,1", "tS:2"]);
    assert_eq!(v["failures"], 0);
}

#[test]
fn table_at_weight_three_carries_residuals() {
    let o = easum(&["table", "--max-weight", "3", "--nmax", "20000", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let reports = v["reports"].as_array().unwrap();
    for key in ["S:2", "S:1,1", "S:2,1", "S:1^2,1", "tS:1,2"] {
        let r = reports.iter().find(|r| r["series"] == key).unwrap_or_else(|| panic!("{key}"));
        assert!(r["residuals"]["formula_vs_oracle"].as_f64().unwrap() <= 1e-5, "{key}");
    }
    assert_eq!(reports.iter().filter(|r| r["weight"] == 3).count(), 10);
}

#[test]
fn table_output_is_deterministic() {
    let a = stdout(&easum(&["table", "--max-weight", "4", "--no-oracle"]));
    let b = stdout(&easum(&["table", "--max-weight", "4", "--no-oracle"]));
    assert_eq!(a, b);
    assert!(a.trim_end().ends_with("0 failures"));
}

#[test]
fn wrong_table_entry_fails_verification() {
    let path = std::env::temp_dir().join(format!("easum-table-{}.json", std::process::id()));
    let bad = r#"[{"key": "S:2", "provenance": "test", "terms": [{"coeff": "1", "monomial": ["z(2)"]}]}]"#;
    std::fs::write(&path, bad).unwrap();
    let o = easum(&["eval", "S:2", "--table", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["passed"], false);
    let missing = easum(&["eval", "S:2", "--table", "/nonexistent/table.json", "--format", "json"]);
    assert_eq!(missing.status.code(), Some(2));
    std::fs::remove_file(path).ok();
}

#[test]
fn selftest_filters_and_passes() {
    let o = easum(&["selftest", "--only", "exact"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS")).collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l.contains(" exact ")));
    let o = easum(&["selftest", "--only", "mzv", "--precision", "1e-6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["failures"], 0);
}

#[test]
fn latex_flag_switches_notation() {
    let o = easum(&["eval", "tS:2", "--latex"]);
    let text = stdout(&o);
    assert!(text.contains("\\zeta(2)"));
    assert!(text.contains("\\tilde{S}_{2}"));
}
