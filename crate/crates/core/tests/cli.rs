use std::path::PathBuf;
use std::process::{Command, Output};

use ensvol::cli::RunReport;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn ensvol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ensvol")).args(args).env_remove("ENSVOL_SEED").output().unwrap()
}

fn report(out: &Output) -> RunReport {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: stdout={} stderr={}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn number(r: &RunReport, key: &str) -> f64 {
    r.results[key].as_f64().unwrap()
}

#[test]
fn entropy_command() {
    let mixed = fixture("mixed_qubit.json");
    let out = ensvol(&["entropy", &mixed]);
    assert_eq!(out.status.code(), Some(0));
    assert!((number(&report(&out), "entropy") - std::f64::consts::LN_2).abs() < 1e-12);

    let out = ensvol(&["entropy", &mixed, "--bits"]);
    assert!((number(&report(&out), "entropy") - 1.0).abs() < 1e-12);

    let out = ensvol(&["entropy", &fixture("collision.json"), "--alpha", "2"]);
    assert!((number(&report(&out), "entropy") - 0.4155154439616658).abs() < 1e-6);
}

#[test]
fn volume_command() {
    let out = ensvol(&["volume", &fixture("pure_qubit.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!((number(&report(&out), "volume") - 1.0).abs() < 1e-12);

    let out = ensvol(&["volume", &fixture("mixed_qubit.json"), "--k", "quantum:2=3"]);
    assert!((number(&report(&out), "volume") - 6.0).abs() < 1e-12);

    let out = ensvol(&["volume", &fixture("mixed_qubit.json"), "--transform", &fixture("hadamard.json")]);
    let r = report(&out);
    assert!(r.checks["invariance"]);
    let out = ensvol(&["volume", &fixture("three_outcomes.json"), "--transform", &fixture("cyclic_shift.json")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn chi_command() {
    let r = report(&ensvol(&["chi", &fixture("zero_plus.json")]));
    assert!((number(&r, "chi_nats") - 0.4164955306996875).abs() < 1e-9);
    assert!((number(&r, "chi_bits") - 0.6008760366928562).abs() < 1e-9);
    let slack = r.results["lanford_robinson"]["slack"].as_f64().unwrap();
    assert!((slack - 0.2766516498602578).abs() < 1e-9);
}

#[test]
fn bounds_command() {
    let out = ensvol(&["bounds", &fixture("zero_plus.json"), "--length", "3", "--code", "random", "--codes", "10", "--v0", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert!(number(&r, "min_projection_slack") >= -1e-9);
    assert!(r.checks["block_chain"] && r.checks["single_measurement"]);

    let out = ensvol(&["bounds", &fixture("zero_plus.json"), "--length", "3", "--code", "type-class"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("block-frequency"));
}

#[test]
fn gaussian_command() {
    let out = ensvol(&[
        "gaussian",
        &fixture("gaussian_unit.json"),
        "--process",
        &fixture("diffusion.json"),
        "--dt",
        "0.01",
        "--steps",
        "100",
        "--symplectic",
        &fixture("rotation_map.json"),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert!((number(&r, "volume_ratio") - 2.0).abs() < 1e-5);
    assert!(r.checks["symplectic_invariance"] && r.checks["marginal_volume"]);

    let out = ensvol(&["gaussian", &fixture("gaussian_unit.json"), "--symplectic", &fixture("hadamard.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oversized_step_is_a_numerical_failure() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let p = dir.path().join("p.json");
    std::fs::write(&g, r#"{"kind":"gaussian","mean":[0,0],"covariance":[[4,0],[0,0.25]]}"#).unwrap();
    std::fs::write(&p, r#"{"drift":[[0,2],[-2,0]],"diffusion":[[0,0],[0,0]]}"#).unwrap();
    let out = ensvol(&["gaussian", g.to_str().unwrap(), "--process", p.to_str().unwrap(), "--dt", "1", "--steps", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("step 1"));
}

#[test]
fn uncertainty_and_correspondence_commands() {
    let r = report(&ensvol(&["uncertainty"]));
    assert!((number(&r, "entropy_sum") - 2.1447298858494).abs() < 1e-3);

    let r = report(&ensvol(&["correspondence", "--ratio-at", "1e4"]));
    let v = r.results["sweep"][0]["ratio"].as_f64().unwrap();
    assert!((v / (2.0 * std::f64::consts::PI) - 1.0).abs() < 1e-3);

    let r = report(&ensvol(&["correspondence", "--hbar", "2", "--ratio-at", "1e4"]));
    let v = r.results["sweep"][0]["ratio"].as_f64().unwrap();
    assert!((v / (4.0 * std::f64::consts::PI) - 1.0).abs() < 1e-3);
}

#[test]
fn fuzz_command() {
    let out = ensvol(&["fuzz", "--axiom", "ii", "--trials", "200", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r.results["report"]["worst_violation"].as_f64().unwrap().abs() < 1e-9);

    let out = ensvol(&["fuzz", "--axiom", "renyi", "--alpha", "2", "--trials", "2000", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r.results["report"]["witness"]["joint"].is_object());

    let out = ensvol(&["fuzz", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out).results["report"]["trials"], 0);
}

#[test]
fn seed_comes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ensvol"))
        .args(["fuzz", "--axiom", "i", "--trials", "3"])
        .env("ENSVOL_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(report(&out).seed, 99);
}

#[test]
fn invalid_input_exits_two_and_names_the_check() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"kind":"quantum","factor_dims":[2],"matrix":[[[1,0],[1,0]],[[0,0],[0,0]]]}"#).unwrap();
    let out = ensvol(&["entropy", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[hermitian]"));

    let out = ensvol(&["volume", &fixture("mixed_qubit.json"), "--strict"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[k-registered]"));

    let out = ensvol(&["chi", &fixture("mixed_qubit.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[document-kind]"));

    let out = ensvol(&["fuzz", "--axiom", "v"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_check_exits_one() {
    let out = ensvol(&["fuzz", "--axiom", "renyi", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("violation_found"));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["chi", &fixture("zero_plus.json")];
    let stdout = ensvol(&args).stdout;
    let out = ensvol(&[&args[..], &["--output", path.to_str().unwrap()]].concat());
    assert!(out.stdout.is_empty());
    let written: RunReport = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let printed: RunReport = serde_json::from_slice(&stdout).unwrap();
    assert_eq!(written.results, printed.results);
}
