//! End-to-end tests of the `artin` binary: spawn the real executable and
//! check output, JSON shape, and exit codes.

use std::process::{Command, Output};

use artin_core::diagrams::{ngon_presentation, Presentation, Quotient};

fn artin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin"))
        .args(args)
        .env_remove("ARTIN_THREADS")
        .output()
        .expect("binary must spawn")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout must be UTF-8")
}

#[test]
fn present_json_roundtrips_to_the_library_presentation() {
    let out = artin(&[
        "present", "--diagram", "ngon", "--n", "5", "--quotient", "cycle", "--format", "json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["command"], "present");
    assert_eq!(v["params"]["n"], 5);
    assert!(v["tool_version"].is_string());
    let parsed = Presentation::from_json(&v["result"]).unwrap();
    let direct = ngon_presentation(5, Quotient::Cycle).unwrap();
    assert_eq!(parsed, direct);
}

#[test]
fn rho_row_is_printed_and_verified() {
    let out = artin(&["rho", "--n", "6", "--k", "2", "--l", "5", "--m", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["result"]["word"], "y3");
    assert_eq!(v["result"]["next"], serde_json::json!([2, 5]));
    assert_eq!(v["result"]["verified"], true);
}

#[test]
fn abelianize_reports_the_cycle_quotient_invariants() {
    let out = artin(&[
        "abelianize", "--n", "6", "--quotient", "cycle", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["result"]["free_rank"], 3);
    assert_eq!(v["result"]["torsion"], serde_json::json!([2]));
}

#[test]
fn abelianize_twisted_point_subgroup() {
    let out = artin(&[
        "abelianize", "--n", "7", "--t", "2", "--subgroup", "point", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["result"]["free_rank"], 2);
    assert_eq!(v["result"]["torsion"], serde_json::json!([2]));
}

#[test]
fn low_index_distinguishes_the_two_quotients_at_n4() {
    let cycle = artin(&["low-index", "--n", "4", "--quotient", "cycle", "--max-index", "4"]);
    assert!(cycle.status.success());
    assert!(stdout_of(&cycle).contains("index 4: 9"));
    let twisted = artin(&["low-index", "--n", "4", "--t", "1", "--max-index", "4"]);
    assert!(twisted.status.success());
    assert!(stdout_of(&twisted).contains("index 4: 8"));
}

#[test]
fn isomap_verifies_and_the_corrupt_control_fails() {
    let good = artin(&["isomap", "--pair", "square-d", "--n", "6"]);
    assert!(good.status.success());
    assert!(stdout_of(&good).contains("verification: ok"));
    let bad = artin(&["isomap", "--pair", "square-d", "--n", "6", "--corrupt"]);
    assert_eq!(bad.status.code(), Some(1), "corrupt map must fail verification");
    assert!(stdout_of(&bad).contains("verification: FAILED"));
}

#[test]
fn verify_maps_passes_on_a_small_range() {
    let out = artin(&["verify-maps", "--n-range", "4..5"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("ok   ngon-d n=4"));
    assert!(text.contains("ok   identity suite n=5"));
    assert!(text.contains("all map families and identities verified"));
}

#[test]
fn reproduce_emits_a_full_pass_table() {
    let out = artin(&["reproduce", "--n-range", "5..6", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["result"]["all_pass"], true);
    // n=5: none, cycle, t=1..3; n=6: none, cycle, t=1..4
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 5 + 6);
}

#[test]
fn parameter_errors_exit_with_code_2() {
    let bad_t = artin(&["abelianize", "--n", "6", "--t", "9"]);
    assert_eq!(bad_t.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_t.stderr).contains("--t must satisfy"));
    let bad_n = artin(&["rho", "--n", "3", "--k", "1", "--l", "2", "--m", "1"]);
    assert_eq!(bad_n.status.code(), Some(2));
}
