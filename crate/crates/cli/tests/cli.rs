use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qec_core::f2la::alist;
use qec_core::homology::surface_code;
use qec_core::io::save_problem;
use qec_core::noise::depolarizing_split;

fn qecwb(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qecwb"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_code_writes_surface_code_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let o = qecwb(
        dir.path(),
        &["--out", "codes", "build-code", "surface", "3"],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["n"], 13);
    assert_eq!(summary["k"], 1);
    let hx = alist::read_file(dir.path().join("codes/surface3_hx.alist")).unwrap();
    let hz = alist::read_file(dir.path().join("codes/surface3_hz.alist")).unwrap();
    assert_eq!(hz.cols(), 13);
    assert_eq!(hx.cols(), 13);
}

#[test]
fn zero_syndrome_decodes_to_zero() {
    let dir = tempfile::tempdir().unwrap();
    let (z, _) = depolarizing_split(&surface_code(3).unwrap(), 0.05).unwrap();
    let files = save_problem(dir.path(), "z", &z).unwrap();
    for decoder in [
        r#"{"kind": "bp"}"#,
        r#"{"kind": "bposd", "order": 2}"#,
        r#"{"kind": "mwd"}"#,
    ] {
        let request = format!(
            r#"{{"problem": {}, "syndrome": "{}", "decoder": {decoder}}}"#,
            serde_json::to_string(&files).unwrap(),
            "0".repeat(z.num_detectors())
        );
        fs::write(dir.path().join("req.json"), request).unwrap();
        let o = qecwb(dir.path(), &["decode", "req.json"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let resp: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(resp["correction"], "0".repeat(13));
        assert_eq!(resp["converged"], true);
    }
}

#[test]
fn benchmark_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("bench.cfg"),
        "code = surface 3\nnoise = depolarizing-split\ndecoder = bposd\nosd_order = 1\nrates = 0.02, 0.05\ntrials = 400\nseed = 9\n",
    )
    .unwrap();
    let a = qecwb(dir.path(), &["--threads", "1", "benchmark", "bench.cfg"]);
    let b = qecwb(dir.path(), &["--threads", "3", "benchmark", "bench.cfg"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 3);

    let c = qecwb(dir.path(), &["--out", "run", "benchmark", "bench.cfg"]);
    assert!(c.status.success());
    assert_eq!(fs::read(dir.path().join("run.csv")).unwrap(), a.stdout);
    let json: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("run.json")).unwrap()).unwrap();
    assert_eq!(json["records"].as_array().unwrap().len(), 2);
}

#[test]
fn sample_reports_errors_and_syndromes() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--seed", "4", "--format", "csv", "sample", "hamming", "--rate", "0.2", "--shots", "5",
    ];
    let a = qecwb(dir.path(), &args);
    assert!(a.status.success());
    assert_eq!(a.stdout, qecwb(dir.path(), &args).stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().next(), Some("shot,component,error,syndrome"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn foliate_exports_graph_and_detectors() {
    let dir = tempfile::tempdir().unwrap();
    let o = qecwb(dir.path(), &["foliate", "surface", "2", "--layers", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v["vertices"].as_array().unwrap().is_empty());
    assert!(!v["detectors"].as_array().unwrap().is_empty());
}

#[test]
fn unknown_subcommand_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(qecwb(dir.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        qecwb(dir.path(), &["build-code", "nonsense"]).status.code(),
        Some(1)
    );
    assert_eq!(qecwb(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn capacity_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("big.cfg"),
        "code = surface 3\nnoise = depolarizing\ndecoder = mld\nrates = 0.01\ntrials = 5\n",
    )
    .unwrap();
    assert_eq!(
        qecwb(dir.path(), &["benchmark", "big.cfg"]).status.code(),
        Some(2)
    );

    let (z, _) = depolarizing_split(&surface_code(7).unwrap(), 0.05).unwrap();
    let files = save_problem(dir.path(), "big", &z).unwrap();
    let request = format!(
        r#"{{"problem": {}, "syndrome": "{}", "decoder": {{"kind": "mld"}}}}"#,
        serde_json::to_string(&files).unwrap(),
        "0".repeat(z.num_detectors())
    );
    fs::write(dir.path().join("req.json"), request).unwrap();
    assert_eq!(
        qecwb(dir.path(), &["decode", "req.json"]).status.code(),
        Some(2)
    );
}
