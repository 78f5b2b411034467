//! Behavior of the `reebmod` binary: exit codes, output formats, and
//! file round trips through real processes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn graphs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("graphs")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reebmod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path(name: &str) -> String {
    graphs().join(name).display().to_string()
}

#[test]
fn validate_accepts_the_checked_in_graphs() {
    for name in ["fig2.reeb", "sphere.reeb", "circle_s1.reeb", "sigma_rule.reeb"] {
        let out = run(&["validate", &path(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
        assert!(stdout(&out).contains("valid: true"));
    }
}

#[test]
fn validate_rejects_a_degenerate_edge_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.reeb");
    std::fs::write(
        &bad,
        "target line\natom S2 dim=2 orientable=true\nvertex v1 height=0\nedge e1 v1 v1 label=S2\n",
    )
    .unwrap();
    let out = run(&["validate", &bad.display().to_string()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("valid: false"));
}

#[test]
fn parse_errors_report_the_line_and_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.reeb");
    std::fs::write(&bad, "target line\nnonsense\n").unwrap();
    let out = run(&["quotient", &bad.display().to_string()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 2"));
}

#[test]
fn quotient_prints_the_invariant_factors_and_generator() {
    let out = run(&["quotient", &path("fig2.reeb")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("invariant factors: [2]"));
    assert!(text.contains("torsion generator: [K]"));
}

#[test]
fn format_flag_switches_rendering_but_not_exit_codes() {
    let text = run(&["quotient", &path("fig2.reeb"), "--format", "text"]);
    let json = run(&["quotient", &path("fig2.reeb"), "--format", "json-like"]);
    assert_eq!(text.status.code(), json.status.code());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(parsed["module"], "Z/2");
    assert_eq!(parsed["invariant_factors"][0], "2");
    assert!(!stdout(&text).starts_with('{'));

    let text = run(&["verify-thm2", &path("fig2.reeb"), &path("fig2.reeb")]);
    let json = run(&[
        "verify-thm2",
        &path("fig2.reeb"),
        &path("fig2.reeb"),
        "--format",
        "json-like",
    ]);
    assert_eq!(text.status.code(), Some(0));
    assert_eq!(json.status.code(), Some(0));
}

#[test]
fn coefficient_flag_accepts_fields_and_rejects_nonsense() {
    let out = run(&["homology", &path("fig2.reeb"), "--coeff", "Z2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("h1: Z/2"));
    assert!(stdout(&out).contains("free rank: 1"));

    let out = run(&["homology", &path("fig2.reeb"), "--coeff", "Z4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not prime"));
}

#[test]
fn cc_reports_generators_and_the_universe_restricts_the_outer_part() {
    let out = run(&["cc", &path("fig2.reeb")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("fiber labels: K, N3, S2, T2"));
    assert!(text.contains("effective generators: 5"));

    let dir = tempfile::tempdir().unwrap();
    let with_universe = dir.path().join("u.reeb");
    let base = std::fs::read_to_string(graphs().join("fig2.reeb")).unwrap();
    std::fs::write(
        &with_universe,
        format!("{base}atom RP2 dim=2 orientable=false\nuniverse K, N3, S2, T2, RP2\n"),
    )
    .unwrap();
    let out = run(&["cc", &with_universe.display().to_string()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("RP2"));
}

#[test]
fn verify_thm2_exit_two_on_a_tampered_product() {
    let dir = tempfile::tempdir().unwrap();
    let prod = dir.path().join("prod.reeb");
    let out = run(&[
        "product",
        &path("fig2.reeb"),
        &path("sphere.reeb"),
        "-o",
        &prod.display().to_string(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&prod).unwrap();
    assert!(text.contains("# product of"));
    assert!(text.contains("# gadget g1:"));

    let out = run(&[
        "verify-thm2",
        &path("fig2.reeb"),
        &path("sphere.reeb"),
        &prod.display().to_string(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    // Dropping one gadget leaves its mirror, so the spans still agree;
    // only connectivity breaks. Exit 2, with the failure named.
    let no_connect = dir.path().join("raw.reeb");
    let out = run(&[
        "product",
        &path("fig2.reeb"),
        &path("sphere.reeb"),
        "-o",
        &no_connect.display().to_string(),
        "--no-connect",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "verify-thm2",
        &path("fig2.reeb"),
        &path("sphere.reeb"),
        &no_connect.display().to_string(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("connected: false"));
}

#[test]
fn hom_reports_the_pairing_and_check_thm1_passes_both_fixtures() {
    let out = run(&["hom", &path("fig2.reeb"), &path("fig2.reeb")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("well defined: true"));
    assert!(text.contains("([K], [K]) -> [K*K]"));

    let out = run(&["check-thm1", &path("fig2.reeb")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("surviving classes: K"));

    let out = run(&["check-thm1", &path("sphere.reeb")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("vacuous"));
}

#[test]
fn random_graphs_round_trip_and_regenerate_identically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.reeb");
    let b = dir.path().join("b.reeb");
    for out_path in [&a, &b] {
        let out = run(&[
            "random",
            "--seed",
            "11",
            "--vertices",
            "9",
            "--labels",
            "3",
            "--target",
            "circle",
            "-o",
            &out_path.display().to_string(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    }
    let text_a = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text_a, std::fs::read_to_string(&b).unwrap());

    let out = run(&["validate", &a.display().to_string()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["quotient", &a.display().to_string()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn export_dot_writes_annotated_graphviz() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let out = run(&[
        "export-dot",
        &path("fig2.reeb"),
        "-o",
        &dot.display().to_string(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("v4@3"));
    assert!(text.contains("label=\"K\""));
}

#[test]
fn missing_files_and_unknown_flags_exit_nonzero() {
    let out = run(&["quotient", "/does/not/exist.reeb"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["quotient", &path("fig2.reeb"), "--format", "xml"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("json-like"));
}
