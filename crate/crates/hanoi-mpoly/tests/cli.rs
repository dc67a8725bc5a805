//! Black-box tests of the binary: output shapes, exit codes, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU32, Ordering};

use hanoi_mpoly::cli::OutputRecord;

const CAP_ENV: &str = "HANOI_MPOLY_STATE_CAP";

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hanoi-mpoly"));
    // Keep the ambient environment from leaking a cap into the tests.
    cmd.env_remove(CAP_ENV);
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("stdout is UTF-8")
}

fn stderr_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).expect("stderr is UTF-8")
}

fn scratch_path(stem: &str) -> PathBuf {
    static COUNTER: AtomicU32 = AtomicU32::new(0);
    let k = COUNTER.fetch_add(1, Ordering::Relaxed);
    std::env::temp_dir().join(format!("hanoi-mpoly-{}-{k}-{stem}", std::process::id()))
}

#[test]
fn compute_text_starts_with_the_polynomial() {
    let out = run(&["compute", "--pegs", "4", "--discs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("12\u{b7}x^3\u{b7}y^5 + 24\u{b7}x^5\u{b7}y^5"));
    assert_eq!(lines.next(), Some("instance: p=4 n=2"));
    assert_eq!(lines.next(), Some("edges: 36 (a1=6, a2=30; e1=24, e2=0, e3=12)"));
    assert!(text.contains("M1 = 336\n"), "got:\n{text}");
    assert!(text.contains("M2 = 780\n"));
    assert!(text.contains("F = 1608\n"));
    assert!(text.contains("MM2 = 1.76 (= 44/25)"), "got:\n{text}");
    assert!(text.contains("A = 919.92 (= "));
    assert!(text.contains("R[1/2] = "));
    assert!(text.contains("RR[-1/2] = "));
}

#[test]
fn compute_json_round_trips() {
    let out = run(&["compute", "--pegs", "3", "--discs", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let record: OutputRecord = serde_json::from_str(stdout_of(&out)).expect("valid JSON");
    assert_eq!((record.p, record.n), (3, 3));
    assert_eq!(record.mode, "canonical");
    assert_eq!(record.edge_census.total, "39");
    assert_eq!(record.indices.m1, "228");
    assert_eq!(record.indices.m2, "333");
    assert!(record.verification.is_none());
    let term = &record.polynomial.terms[0];
    assert_eq!((term.i, term.j, term.count.as_str()), (2, 3, "6"));

    let again: OutputRecord =
        serde_json::from_str(&serde_json::to_string(&record).unwrap()).unwrap();
    assert_eq!(again, record);
}

#[test]
fn compute_with_verification_embeds_a_passing_report() {
    let out = run(&["compute", "--pegs", "3", "--discs", "4", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("verification: PASS (81 states enumerated)"));

    let out = run(&[
        "compute", "--pegs", "3", "--discs", "4", "--verify", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let record: OutputRecord = serde_json::from_str(stdout_of(&out)).unwrap();
    let v = record.verification.expect("verification section present");
    assert!(v.passed);
    assert_eq!(v.states, 81);
    assert!(v.checks.iter().all(|c| c.ok));
}

#[test]
fn custom_alphas_replace_the_defaults() {
    let out = run(&[
        "compute", "--pegs", "3", "--discs", "1", "--alpha", "2", "--alpha", "-3/2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("R[2] = 48.00 (= 48)"), "got:\n{text}");
    assert!(text.contains("R[-3/2] = "));
    assert!(!text.contains("R[1/2]"));
}

#[test]
fn verify_reports_every_check_and_passes() {
    let out = run(&["verify", "--pegs", "4", "--discs", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.starts_with("verify p=4 n=3: 64 states enumerated\n"));
    assert!(text.contains("[ok] vertices: 64"));
    assert!(text.contains("[ok] total edges: 168"));
    assert!(text.trim_end().ends_with("PASS (168 edges)"), "got:\n{text}");
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn sweep_csv_is_deterministic_and_matches_the_frozen_header() {
    let args = ["sweep", "--pegs", "3..5", "--discs", "1..4"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "sweep output must be reproducible");

    let text = stdout_of(&first);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,n,E,M1,M2,MM2,SSD,H,ISI,A,F"));
    assert_eq!(text.lines().count(), 1 + 3 * 4);
    let row = text
        .lines()
        .find(|l| l.starts_with("4,2,"))
        .expect("row for p=4 n=2");
    assert_eq!(row, "4,2,36,336,780,1.76,75.20,7.80,82.50,919.92,1608");
}

#[test]
fn sweep_exact_appends_rational_columns() {
    let out = run(&["sweep", "--pegs", "3", "--discs", "1", "--exact"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("p,n,E,M1,M2,MM2,SSD,H,ISI,A,F,MM2_exact,SSD_exact,H_exact,ISI_exact,A_exact")
    );
    assert_eq!(lines.next(), Some("3,1,3,12,12,0.75,6.00,1.50,3.00,24.00,24,3/4,6,3/2,3,24"));
}

#[test]
fn sweep_writes_the_same_bytes_to_a_file() {
    let path = scratch_path("sweep.csv");
    let args = ["sweep", "--pegs", "2..4", "--discs", "0..3"];
    let piped = run(&args);
    let out = bin()
        .args(args)
        .arg("--out")
        .arg(&path)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).expect("sweep file written");
    assert_eq!(written, piped.stdout);
    std::fs::remove_file(&path).ok();
}

#[test]
fn sweep_json_parses_as_records() {
    let out = run(&["sweep", "--pegs", "4", "--discs", "1..2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let records: Vec<OutputRecord> = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!((records[0].p, records[0].n), (4, 1));
    assert_eq!((records[1].p, records[1].n), (4, 2));
    assert_eq!(records[1].indices.f, "1608");
}

#[test]
fn oeis_prints_one_term_per_line() {
    let out = run(&["oeis", "--sequence", "m1-h3k"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "12\n66\n228\n714\n2172\n6546\n19668\n59034\n");

    let out = run(&["oeis", "--sequence", "ceil-mm2-hk3", "--terms", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "0\n4\n5\n7\n");
}

#[test]
fn oeis_rejects_unknown_sequences_with_the_catalogue() {
    let out = run(&["oeis", "--sequence", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("known sequences:"));
    assert!(err.contains("floor-mm2-hk3"));
}

#[test]
fn diagnostics_flag_the_known_divergences() {
    let out = run(&["paper-diagnostics", "--pegs", "4", "--discs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(
        text.contains("equal-degree mu=2 at x^5 y^5: literal 30, canonical 24  [DIVERGES]"),
        "got:\n{text}"
    );
    // The smallest class formula extrapolates below its valid range here and
    // goes negative; the two errors happen to cancel in the total.
    assert!(text.contains("equal-degree mu=1 at x^3 y^3: literal -6, canonical 0  [DIVERGES]"));
    assert!(text.contains("literal total 36 vs canonical edge count 36"));

    let out = run(&["paper-diagnostics", "--pegs", "4", "--discs", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let record: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(record["mode"], "paper-diagnostic");
    let tops: Vec<&serde_json::Value> = record["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["family"] == "equal-degree top")
        .collect();
    assert_eq!(tops.len(), 1);
    assert_eq!(tops[0]["literal"], "504");
    assert_eq!(tops[0]["canonical"], "384");
    assert_eq!(tops[0]["diverges"], true);
    // The claimed one-line top form diverges from the per-class value too.
    assert_eq!(record["compact_top"]["claimed"], "10");
    assert_eq!(record["compact_top"]["canonical"], "384");
    assert_eq!(record["compact_top"]["matches"], false);
}

#[test]
fn domain_errors_exit_2() {
    for args in [
        &["compute", "--pegs", "0", "--discs", "3"][..],
        &["verify", "--pegs", "0", "--discs", "1"],
        &["sweep", "--pegs", "5..3", "--discs", "1"],
        &["sweep", "--pegs", "3", "--discs", "x..y"],
        &["compute", "--pegs", "3", "--discs", "1", "--alpha", "1e3"],
        &["compute", "--pegs", "3", "--discs", "1", "--alpha", "1/0"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
        assert!(stderr_of(&out).starts_with("error:"), "args: {args:?}");
    }
    // clap's own usage failure uses the same code.
    let out = run(&["compute", "--pegs", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn state_cap_refusal_exits_3() {
    let out = run(&["verify", "--pegs", "5", "--discs", "12", "--cap", "1000"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("cap"), "got: {}", stderr_of(&out));
}

#[test]
fn state_cap_env_is_honoured_and_flag_wins() {
    let out = bin()
        .args(["verify", "--pegs", "3", "--discs", "3"])
        .env(CAP_ENV, "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "27 states exceed the env cap of 10");

    let out = bin()
        .args(["verify", "--pegs", "3", "--discs", "3", "--cap", "100"])
        .env(CAP_ENV, "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "--cap overrides the env value");

    let out = bin()
        .args(["verify", "--pegs", "3", "--discs", "3"])
        .env(CAP_ENV, "not a number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_path_exits_4() {
    let path = scratch_path("missing-dir").join("sweep.csv");
    let out = bin()
        .args(["sweep", "--pegs", "3", "--discs", "1", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let stderr = stderr_of(&out);
    assert!(stderr.starts_with("error:"));
    // The message must name the path the user asked for.
    assert!(stderr.contains(path.to_str().unwrap()), "stderr was: {stderr}");
}

#[test]
fn closed_stdout_pipe_is_a_quiet_stop() {
    use std::io::Read;
    use std::process::Stdio;
    // Large enough that the write cannot fit in the pipe buffer.
    let mut child = bin()
        .args(["compute", "--pegs", "40", "--discs", "200", "--format", "json"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    drop(child.stdout.take());
    let status = child.wait().expect("child exits");
    let mut err = String::new();
    child
        .stderr
        .take()
        .unwrap()
        .read_to_string(&mut err)
        .unwrap();
    assert_eq!(status.code(), Some(0), "stderr:\n{err}");
    assert!(err.is_empty(), "stderr:\n{err}");
}

#[test]
fn help_and_version_exit_0() {
    for args in [&["--help"][..], &["--version"], &["compute", "--help"]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "args: {args:?}");
    }
}
