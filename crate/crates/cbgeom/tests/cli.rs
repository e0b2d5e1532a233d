//! End-to-end tests of the `cbgeom` binary: exit codes, byte determinism,
//! and the generate -> analyze round trip.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cbgeom"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cbgeom-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn no_subcommand_is_a_usage_error() {
    let out = bin().output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_clean() {
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("analyze"));
}

#[test]
fn unknown_case_and_suite_are_usage_errors() {
    let out = bin().args(["generate", "--case", "case-ix"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("unknown case"));

    let out = bin().args(["verify", "--suite", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("chasles"), "error should list the suites");
}

#[test]
fn bad_lengths_are_rejected_before_sampling() {
    let out = bin()
        .args(["generate", "--case", "i", "--lengths", "1,1,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_and_malformed_files_exit_3() {
    let out = bin().args(["analyze", "/nonexistent/p.points"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    let dir = tmp_dir("malformed");
    let file = dir.join("dup.points");
    fs::write(
        &file,
        "field p=32003\nambient n=3\npoint 1 0 0 0\npoint 2 0 0 0\n",
    )
    .unwrap();
    let out = bin().arg("analyze").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = stderr_of(&out);
    assert!(
        err.contains("line 4: duplicate point, same as line 3"),
        "stderr was: {err}"
    );
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_suite_passes_and_prints_summary() {
    let out = bin()
        .args(["verify", "--suite", "chasles", "--trials", "5", "--seed", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "suite chasles: 5/5 passed\n");
    assert!(stderr_of(&out).contains("elapsed:"), "timing goes to stderr");
}

#[test]
fn tables_csv_matches_frozen_grid() {
    let out = bin().args(["tables", "--format", "csv"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let golden = "\
c2,expected,bound,d1,d2,d3,d4,d5,d6,d7,d8,d9,d10,d11,d12,d13,d14
5,-19,2,,,,,,,,,,,,,,
6,-15,3,5,,,,,,,,,,,,,
7,-11,-1,6,8,,,,,,,,,,,,
8,-7,7,,9,11,,,,,,,,,,,
9,-3,10,10,,12,14,,,,,,,,,,
10,1,11,13,13,,15,17,,,,,,,,,
11,5,13,14,16,16,,18,20,,,,,,,,
12,9,19,16,17,19,19,,21,23,,,,,,,
13,13,24,22,19,20,22,22,,24,26,,,,,,
14,17,26,27,25,22,23,25,25,,27,29,,,,,
15,21,28,29,30,28,25,26,28,28,,30,32,,,,
16,25,30,31,32,33,31,28,29,31,31,,33,35,,,
17,29,34,33,34,35,36,34,31,32,34,34,,36,38,,
18,33,38,37,36,37,38,39,37,34,35,37,37,,39,41,
19,37,42,41,40,39,40,41,42,40,37,38,40,40,,42,44
";
    assert_eq!(stdout_of(&out), golden);
}

#[test]
fn tables_text_layout_is_stable() {
    let out = bin().args(["tables"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    // one spot row with a no-stratum cell, exact spacing
    assert!(
        text.contains("\n  10     1    11   13   13   --   15   17   --   --   --   --\n"),
        "row c2=10 changed shape:\n{text}"
    );
    assert!(text.contains("strata dimension bounds (d = 1..9)"));
    assert!(text.contains("(d = 10..14)"));
    // the empty-moduli bound renders as -1 in both blocks
    assert!(text.contains("\n   7   -11    -1"));

    // byte determinism across runs
    let again = bin().args(["tables"]).output().unwrap();
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn prop_source_appends_only_recorded_disagreements() {
    let out = bin().args(["tables", "--source", "prop"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("diff against embedded grid: 6 strata cells, 10 bound rows"));
    assert!(text.contains("(recorded)"));
    assert!(!text.contains("(NEW)"));
}

#[test]
fn generate_writes_three_files_deterministically() {
    let d1 = tmp_dir("gen1");
    let d2 = tmp_dir("gen2");
    for dir in [&d1, &d2] {
        let out = bin()
            .args(["generate", "--case", "ii", "--seed", "7"])
            .arg("--out")
            .arg(dir.join("cfg"))
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
        let msg = stdout_of(&out);
        assert!(msg.contains("cfg.points"));
        assert!(msg.contains("cfg.witness"));
        assert!(msg.contains("cfg.sextic"));
    }
    for ext in ["points", "witness", "sextic"] {
        let a = fs::read(d1.join("cfg").with_extension(ext)).unwrap();
        let b = fs::read(d2.join("cfg").with_extension(ext)).unwrap();
        assert_eq!(a, b, "{ext} file differs between identical runs");
    }

    // 27 point lines for the default case-ii lengths
    let points = fs::read_to_string(d1.join("cfg.points")).unwrap();
    assert_eq!(points.lines().filter(|l| l.starts_with("point ")).count(), 27);

    fs::remove_dir_all(&d1).unwrap();
    fs::remove_dir_all(&d2).unwrap();
}

#[test]
fn nine_cubic_pencil_points_analyze_as_cb3() {
    let dir = tmp_dir("ci33");
    let out = bin()
        .args(["generate", "--case", "ci33", "--seed", "4"])
        .arg("--out")
        .arg(dir.join("pencil"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));

    let out = bin()
        .args(["analyze", "--cb", "3"])
        .arg(dir.join("pencil.points"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("points 9 over F_32003 in P^2"), "{text}");
    assert!(text.contains("CB(3): true"), "{text}");
    assert!(text.contains("degree 3: conditions 8"), "{text}");
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn generated_case_classifies_blind_from_the_file() {
    let dir = tmp_dir("roundtrip");
    let out = bin()
        .args(["generate", "--case", "iii", "--seed", "9"])
        .arg("--out")
        .arg(dir.join("c3"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));

    let out = bin()
        .args(["analyze", "--cb", "5", "--classify"])
        .arg(dir.join("c3.points"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("CB(5):"), "{text}");
    assert!(text.contains("classification: Case III"), "{text}");
    assert!(text.contains("witness"), "{text}");

    // analyze output is itself byte-deterministic
    let again = bin()
        .args(["analyze", "--cb", "5", "--classify"])
        .arg(dir.join("c3.points"))
        .output()
        .unwrap();
    assert_eq!(out.stdout, again.stdout);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn rational_points_round_trip_through_analyze() {
    let dir = tmp_dir("rat");
    let file = dir.join("q.points");
    fs::write(
        &file,
        "field rational\nambient n=2\npoint 1 0 0\npoint 0 1 0\npoint 0 0 1\npoint 1 1 1\npoint 1 2 4\n",
    )
    .unwrap();
    let out = bin().args(["analyze", "--degrees", "1..2"]).arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("points 5 over Q in P^2"), "{text}");
    // five points in general position impose independent conditions on conics
    assert!(text.contains("degree 2: conditions 5  h0 1  h1 0"), "{text}");
    fs::remove_dir_all(&dir).unwrap();
}
