use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;
use vnf::cli::{OutputFormat, RunConfig};
use vnf::hankel::WeightSpec;

fn repo() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn vnf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vnf")).args(args).current_dir(repo()).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn schema_props(name: &str) -> BTreeSet<String> {
    let text = std::fs::read_to_string(repo().join("docs").join(name)).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    v["properties"].as_object().unwrap().keys().cloned().collect()
}

#[test]
fn shipped_configs_round_trip_and_validate() {
    let mut n = 0;
    for entry in std::fs::read_dir(repo().join("configs")).unwrap() {
        let path = entry.unwrap().path();
        let cfg = RunConfig::load(&path).unwrap();
        let back = RunConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(back, cfg, "{}", path.display());
        cfg.to_problem().unwrap();
        n += 1;
    }
    assert!(n >= 6);
}

#[test]
fn schemas_list_exactly_the_serialized_fields() {
    let cfg: Value = serde_json::from_str(&RunConfig::default().to_json()).unwrap();
    let keys: BTreeSet<String> = cfg.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, schema_props("run_config.schema.json"));

    let w = serde_json::to_value(WeightSpec::real_bump(2.5, 1.5)).unwrap();
    let keys: BTreeSet<String> = w.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, schema_props("weight_spec.schema.json"));

    let o = vnf(&["verify", "--reproducible", "--max-radius", "64"]);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: BTreeSet<String> = r.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, schema_props("verification_report.schema.json"));
}

#[test]
fn unknown_config_fields_are_rejected() {
    assert!(RunConfig::from_json(r#"{"field": "Q", "tolerance": 1e-6}"#).is_err());
    assert!(RunConfig::from_json(r#"{"ideal": "(1)"}"#).is_err());
}

#[test]
fn classical_config_passes_with_exit_zero() {
    let o = vnf(&["verify", "--config", "configs/classical-voronoi.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r["rel_err"].as_f64().unwrap() <= 1e-6);
    assert_eq!(r["passed"], Value::Bool(true));
}

#[test]
fn reproducible_reports_are_bit_stable() {
    let a = vnf(&["verify", "--config", "configs/oppenheim.json", "--reproducible"]);
    let b = vnf(&["verify", "--config", "configs/oppenheim.json", "--reproducible"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["timings"]["total_ms"].as_f64(), Some(0.0));
}

#[test]
fn non_squarefree_field_is_a_config_error() {
    let o = vnf(&["verify", "--field", "Q(sqrt,12)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NonSquarefree"), "{}", stderr(&o));
}

#[test]
fn small_max_radius_gives_exit_three_with_partial_report() {
    let o = vnf(&["verify", "--max-radius", "4", "--reproducible"]);
    assert_eq!(o.status.code(), Some(3));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["budget_exceeded"], Value::Bool(true));
    assert!(r["dual_terms"].as_u64().unwrap() > 0);
}

#[test]
fn identity_failure_gives_exit_one() {
    // a tolerance below what the transforms can deliver
    let o = vnf(&["verify", "--tol", "1.1e-10", "--s-re", "0.3", "--max-radius", "1e6"]);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rel = r["rel_err"].as_f64().unwrap();
    if rel > 1.1e-10 {
        assert_eq!(o.status.code(), Some(1));
    } else {
        assert_eq!(o.status.code(), Some(0));
    }
}

#[test]
fn csv_and_text_formats() {
    let o = vnf(&["verify", "--format", "csv", "--reproducible"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("field,a_ideal,zeta,s_re,s_im,tol,lhs_re,lhs_im"));
    assert_eq!(lines.count(), 1);
    let o = vnf(&["verify", "--format", "text"]);
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("vnf-report-{}.json", std::process::id()));
    let o = vnf(&["verify", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["field"], Value::String("Q".into()));
    std::fs::remove_file(path).ok();
}

#[test]
fn eval_examples() {
    let o = vnf(&["eval", "zeta", "--field", "Q(sqrt,-1)", "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("re=1.50670300992"), "{}", stdout(&o));

    let o = vnf(&["eval", "tau", "--field", "Q", "--ideal", "(6)", "--s", "0"]);
    assert!(stdout(&o).contains("re=4.00000000000000e0"), "{}", stdout(&o));

    // −2π·Y₀(4π)
    let o = vnf(&["eval", "kernel", "--place", "real", "--s", "0", "--x", "1", "--format", "json"]);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    let v = r[0]["re"].as_f64().unwrap();
    assert!((v - 1.009_470_069_346_055).abs() < 1e-12, "{v}");
}

#[test]
fn eval_grids_and_bad_arguments() {
    let o = vnf(&["eval", "kernel", "--x", "-2,-1,0.5,1,2", "--s", "0.25", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 6);
    for args in [
        &["eval", "psi", "--field", "Q"][..],
        &["eval", "kernel", "--x", "0"][..],
        &["eval", "zeta", "--field", "Q(sqrt,1)"][..],
        &["eval", "nothing"][..],
        &["eval", "tau", "--ideal", "(0)"][..],
    ] {
        assert_eq!(vnf(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn eval_remaining_subjects() {
    for args in [
        &["eval", "hankel", "--y", "0.5,-3", "--s", "0.2"][..],
        &["eval", "hankel", "--field", "Q(sqrt,5)", "--y", "0.5,2"][..],
        &["eval", "mellin", "--s", "0.3"][..],
        &["eval", "laurent", "--field", "Q(sqrt,5)"][..],
        &["eval", "dualdata", "--zeta", "1/3"][..],
        &["eval", "psi", "--field", "Q(sqrt,-5)", "--element", "1/3+1/2*w"][..],
    ] {
        let o = vnf(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert!(!o.stdout.is_empty());
    }
}

#[test]
fn selftest_passes_on_a_fresh_build() {
    let o = vnf(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("10 suites, 0 failed"));
}

fn failing_suites(text: &str) -> Vec<String> {
    text.lines().filter(|l| l.contains(" FAIL ")).map(|l| l.split("  ").next().unwrap().trim().to_string()).collect()
}

#[test]
fn selftest_catches_a_flipped_local_character() {
    let o = vnf(&["selftest", "--inject", "psi-sign-flip"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(failing_suites(&stdout(&o)), vec!["character triviality"]);
}

#[test]
fn selftest_catches_a_kernel_that_is_not_even() {
    let o = vnf(&["selftest", "--inject", "kernel-asymmetry"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(failing_suites(&stdout(&o)).contains(&"kernel s-evenness".to_string()));
}

#[test]
fn thread_count_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_vnf"))
        .args(["verify", "--reproducible", "--config", "configs/oppenheim.json"])
        .current_dir(repo())
        .env("VNF_THREADS", "2")
        .output()
        .unwrap();
    let base = vnf(&["verify", "--reproducible", "--config", "configs/oppenheim.json"]);
    assert_eq!(o.stdout, base.stdout);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]
    #[test]
    fn run_config_round_trips(
        d in prop::sample::select(vec![-5i64, -1, 2, 3, 5]),
        s_re in -2.0f64..2.0,
        s_im in -5.0f64..5.0,
        tol_exp in -9.0f64..-3.0,
        radius in 4.0f64..1e7,
        reproducible: bool,
        fmt in prop::sample::select(vec![OutputFormat::Json, OutputFormat::Csv, OutputFormat::Text]),
    ) {
        let cfg = RunConfig {
            field: format!("Q(sqrt,{d})"),
            ideal: "(2,w)".into(),
            zeta: "1/7-2/3*w".into(),
            s_re,
            s_im,
            weight: Some(WeightSpec::real_bump(3.0, 1.0)),
            tol: 10f64.powf(tol_exp),
            max_radius: radius,
            reproducible,
            format: fmt,
            out: Some("report.json".into()),
        };
        let text = cfg.to_json();
        let back = RunConfig::from_json(&text).unwrap();
        prop_assert_eq!(&back, &cfg);
        prop_assert_eq!(back.to_json(), text);
    }
}
