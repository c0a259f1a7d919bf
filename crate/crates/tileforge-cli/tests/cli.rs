use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tileforge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn tileforge")
}

fn report(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn stderr_report(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is a JSON error")
}

fn tmp_path(name: &str) -> std::path::PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("tileforge-cli-{}-{name}", std::process::id()));
    p
}

#[test]
fn analyze_reports_jordan_form() {
    let out = run(&["analyze", "--matrix", "3,10;0,3"]);
    let r = report(&out);
    assert_eq!(r["dimension"], 2);
    assert_eq!(r["determinant"], 9);
    assert_eq!(r["characteristic_polynomial"], serde_json::json!([9, -6, 1]));
    assert_eq!(r["eigenvalues"][0]["value"], 3);
    assert_eq!(r["eigenvalues"][0]["multiplicity"], 2);
    assert_eq!(r["dilation"], true);
    assert_eq!(r["jordan"]["j"], serde_json::json!([[3, 1], [0, 3]]));
    assert_eq!(r["jordan"]["p"], serde_json::json!([[10, 0], [0, 1]]));
    assert_eq!(r["jordan"]["verified"], true);
}

#[test]
fn analyze_rejects_irrational_spectrum() {
    let out = run(&["analyze", "--matrix", "0,-1;1,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_report(&out)["error"]["kind"], "not-rational-spectrum");
}

#[test]
fn analyze_flags_expanding_failure_without_erroring() {
    let out = run(&["analyze", "--matrix", "1,0;0,2"]);
    let r = report(&out);
    assert_eq!(r["dilation"], false);
    assert_eq!(r["offending_eigenvalue"], 1);
}

#[test]
fn digits_form_residue_system() {
    let csv = tmp_path("digits.csv");
    let out = run(&[
        "digits",
        "--matrix",
        "2,1;0,2",
        "--out",
        csv.to_str().unwrap(),
    ]);
    let r = report(&out);
    assert_eq!(r["cardinality"], 4);
    assert_eq!(r["provenance"], "centered-canonical");
    assert_eq!(r["residue"]["complete"], true);
    assert_eq!(
        r["digits"],
        serde_json::json!([[0, 0], [0, 1], [1, 0], [1, 1]])
    );
    let written = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(written, "0,0\n0,1\n1,0\n1,1\n");
    std::fs::remove_file(&csv).ok();
}

#[test]
fn check_accepts_plane_doubling() {
    let out = run(&["check", "--matrix", "2,0;0,2"]);
    let r = report(&out);
    assert_eq!(r["verdict"]["status"], "connected");
    assert_eq!(r["verdict"]["criterion"], "sufficient-condition");
    assert_eq!(r["digit_connected"], true);
    let edges = r["edge_checks"].as_array().unwrap();
    assert_eq!(edges.len(), 4);
    assert!(edges.iter().all(|e| e["connected"] == true));
}

#[test]
fn check_stalls_on_wide_shear_digits() {
    let out = run(&["check", "--matrix", "3,10;0,3"]);
    let r = report(&out);
    assert_eq!(r["verdict"]["status"], "inconclusive");
    assert_eq!(r["verdict"]["criterion"], "digit-connectivity");
    assert!(r["verdict"]["witness"].is_object());
    assert_eq!(r["digit_connected"], false);
}

#[test]
fn check_lists_neighbor_ring() {
    let out = run(&[
        "check",
        "--matrix",
        "2,0;0,2",
        "--neighbors",
        "--radius",
        "2",
    ]);
    let r = report(&out);
    assert_eq!(r["neighbors"]["count"], 8);
    assert_eq!(r["neighbors"]["radius"], 2);
    let vectors = r["neighbors"]["vectors"].as_array().unwrap();
    assert!(vectors.contains(&serde_json::json!([-1, 1])));
    assert!(!vectors.contains(&serde_json::json!([0, 0])));
}

#[test]
fn levels_flag_wide_shear_fracture() {
    let out = run(&["levels", "--matrix", "3,10;0,3", "--max-level", "2"]);
    let r = report(&out);
    assert_eq!(r["verdict"]["status"], "disconnected");
    assert_eq!(r["verdict"]["criterion"], "level-sets");
    assert_eq!(r["verdict"]["level"], 1);
    assert_eq!(r["levels"][0]["point_count"], 9);
    assert_eq!(r["levels"][0]["connected"], false);
}

#[test]
fn levels_stay_connected_for_twin_dragon_base() {
    let out = run(&["levels", "--matrix", "1,-1;1,1", "--max-level", "3"]);
    let r = report(&out);
    assert_eq!(r["verdict"]["status"], "inconclusive");
    let levels = r["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 3);
    assert!(levels.iter().all(|l| l["connected"] == true));
    assert_eq!(levels[2]["point_count"], 8);
}

#[test]
fn pipeline_connects_wide_shear() {
    let csv = tmp_path("pipeline.csv");
    let out = run(&[
        "pipeline",
        "--matrix",
        "3,10;0,3",
        "--out",
        csv.to_str().unwrap(),
    ]);
    let r = report(&out);
    assert_eq!(r["verdict"]["status"], "connected");
    assert_eq!(r["verdict"]["criterion"], "pipeline");
    assert_eq!(r["digit_count"], 9);
    assert_eq!(r["residue"]["complete"], true);
    assert_eq!(r["certificates"][0]["eigenvalue"], 3);
    assert_eq!(r["certificates"][0]["size"], 2);
    assert_eq!(r["certificates"][0]["digits_connected"], true);
    let written = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(written.lines().count(), 9);
    std::fs::remove_file(&csv).ok();
}

#[test]
fn pipeline_rejects_non_expanding_matrix() {
    let out = run(&["pipeline", "--matrix", "1,0;0,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_report(&out)["error"]["kind"], "not-dilation");
}

#[test]
fn render_matches_golden_image() {
    let pgm = tmp_path("golden.pgm");
    let out = run(&[
        "render",
        "--matrix",
        "2,1;0,2",
        "--depth",
        "3",
        "--size",
        "8x8",
        "--out",
        pgm.to_str().unwrap(),
    ]);
    let r = report(&out);
    assert_eq!(r["point_count"], 64);
    assert_eq!(r["occupied"], 14);
    assert_eq!(r["gap"], "15/16");

    let mut expected = b"P5\n8 8\n255\n".to_vec();
    let rows: [u64; 8] = [
        0b00000000, 0b00000000, 0b00111000, 0b00111100, 0b00111100, 0b00011100, 0b00000000,
        0b00000000,
    ];
    for row in rows {
        for bit in (0..8).rev() {
            expected.push(if row >> bit & 1 == 1 { 255 } else { 0 });
        }
    }
    assert_eq!(std::fs::read(&pgm).unwrap(), expected);
    std::fs::remove_file(&pgm).ok();
}

#[test]
fn render_is_identical_across_execution_modes() {
    let pgm = tmp_path("modes.pgm");
    let args = [
        "render",
        "--matrix",
        "2,1;0,2",
        "--depth",
        "6",
        "--size",
        "64x64",
        "--out",
        pgm.to_str().unwrap(),
    ];
    let out_par = run(&args);
    let bytes_par = std::fs::read(&pgm).unwrap();
    let mut seq_args = args.to_vec();
    seq_args.push("--sequential");
    let out_seq = run(&seq_args);
    let bytes_seq = std::fs::read(&pgm).unwrap();
    assert_eq!(out_par.stdout, out_seq.stdout);
    assert_eq!(bytes_par, bytes_seq);
    std::fs::remove_file(&pgm).ok();
}

#[test]
fn render_honors_explicit_viewport() {
    let pgm = tmp_path("window.pgm");
    let out = run(&[
        "render",
        "--matrix",
        "2,0;0,2",
        "--depth",
        "4",
        "--size",
        "16x16",
        "--viewport",
        "-1/8,9/8,-1/8,9/8",
        "--out",
        pgm.to_str().unwrap(),
    ]);
    let r = report(&out);
    assert_eq!(r["viewport"]["min_x"], "-1/8");
    assert_eq!(r["viewport"]["max_x"], "9/8");
    assert!(r["occupied"].as_u64().unwrap() > 0);
    std::fs::remove_file(&pgm).ok();
}

#[test]
fn render_rejects_non_planar_matrix() {
    let pgm = tmp_path("cube.pgm");
    let out = run(&[
        "render",
        "--matrix",
        "2,0,0;0,2,0;0,0,2",
        "--out",
        pgm.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_report(&out)["error"]["kind"], "input");
}

#[test]
fn malformed_matrix_exits_one() {
    for bad in ["2,1;0", "2,x;0,2", "2,1", ""] {
        let out = run(&["digits", "--matrix", bad]);
        assert_eq!(out.status.code(), Some(1), "matrix {bad:?}");
        assert_eq!(stderr_report(&out)["error"]["kind"], "input");
    }
}

#[test]
fn budget_env_caps_expansion() {
    let out = bin()
        .args(["levels", "--matrix", "2,0;0,2", "--max-level", "5"])
        .env("TILEFORGE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_report(&out)["error"]["kind"], "budget-exceeded");

    let out = bin()
        .args(["levels", "--matrix", "2,0;0,2"])
        .env("TILEFORGE_BUDGET", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_report(&out)["error"]["kind"], "input");
}

#[test]
fn help_and_usage_exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["render", "--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(
        run(&["check", "--matrix", "2,0;0,2", "--radius", "2"])
            .status
            .code(),
        Some(1),
        "--radius requires --neighbors"
    );
}

#[test]
fn timings_flag_is_additive_and_optional() {
    let plain = report(&run(&["jordan", "--matrix", "3,10;0,3"]));
    assert!(plain.get("timings").is_none());
    let timed = report(&run(&["jordan", "--matrix", "3,10;0,3", "--timings"]));
    assert!(timed["timings"]["total_ms"].as_f64().unwrap() >= 0.0);
}
