use std::process::{Command, Output};

fn fatpoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fatpoint")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = fatpoint(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Second column of the `t\tdim` table.
fn dims(text: &str) -> Vec<u64> {
    text.lines()
        .skip_while(|l| *l != "t\tdim")
        .skip(1)
        .map(|l| l.split('\t').nth(1).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn hilbert_engines() {
    let e = stdout(&["hilbert", "--uniform", "10", "2", "--engine", "expected", "--degrees", "6..9"]);
    assert_eq!(dims(&e), [0, 6, 15, 25]);
    let a = stdout(&["hilbert", "--uniform", "16", "1", "--engine", "actual", "--seed", "1", "--degrees", "4..6"]);
    assert_eq!(dims(&a), [0, 5, 12]);
    assert!(a.contains("engine actual"));
    // Cubics double at two points contain the line twice over a residual conic.
    let c = stdout(&["hilbert", "--mults", "2,2", "--engine", "conjectural", "--degrees", "2..=3"]);
    assert_eq!(dims(&c), [1, 4]);
}

#[test]
fn hilbert_dump_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    stdout(&["hilbert", "--uniform", "4", "1", "--engine", "actual", "--degrees", "1..2", "--dump-dir", path]);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
}

#[test]
fn resolution_reports() {
    let r = stdout(&["resolution", "--uniform", "16", "1"]);
    assert!(r.contains("predicted F0 = R[-5]^5\n"));
    assert!(r.contains("predicted F1 = R[-6]^3 + R[-7]^1\n"));
    assert!(r.ends_with("match=true\n"));
    assert!(stdout(&["resolution", "--uniform", "10", "2", "--require-match"]).ends_with("match=true\n"));
    let z = stdout(&["resolution", "--mults", "0,0,0"]);
    assert!(z.contains("predicted F0 = R\n") && z.contains("predicted F1 = 0\n"));
}

#[test]
fn certify_examples() {
    let c = stdout(&["certify", "--uniform", "25", "2"]);
    assert!(c.lines().next().unwrap().contains("RANK-MINIMAL by odd-square"), "{c}");
    let d = stdout(&["certify", "--uniform", "10", "4", "--discharge", "--seed", "1"]);
    assert!(d.contains("by nonsquare-witness") && d.contains("by equal-lead-q-zero"), "{d}");
    assert!(d.contains("unhindered(I'): holds"));
    assert!(!d.contains("FAILS"));
    for flag in ["--prop63", "--ninefold"] {
        let w = stdout(&["certify", flag, "--m", "2", "--t", "1"]);
        assert!(w.contains("n-range 15..20\n"));
        let certs: Vec<&str> = w.lines().filter(|l| l.contains("RANK-MINIMAL")).collect();
        assert_eq!(certs.len(), 6);
        assert!(certs.iter().all(|l| l.contains("unconditionally")));
    }
    let t = stdout(&["certify", "--head-tail", "--m", "4", "--r", "10", "--tail", "2"]);
    assert!(t.contains("RANK-MINIMAL by head-tail"));
    let o = stdout(&["certify", "--odd-square-tail", "--r", "5", "--m", "2", "--tail", "1"]);
    assert!(o.contains("RANK-MINIMAL"), "{o}");
}

#[test]
fn pell_examples() {
    let p = stdout(&["pell", "10", "--count", "2", "--f", "7", "--g", "1"]);
    assert!(p.starts_with("fundamental (19, 6)\n"));
    assert!(p.contains("  (7, 1)\n  (7327, 2317)\n"));
    assert!(p.contains("m=1158 "));
    let s = stdout(&["pell", "10", "--scan", "1..6"]);
    let ms: Vec<&str> = s.lines().filter(|l| l.starts_with("  m=")).collect();
    assert_eq!(ms, ["  m=4 x=13 slack=10", "  m=5 x=16 slack=6"]);
    let sq = fatpoint(&["pell", "16"]);
    assert_eq!(sq.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&sq.stderr).contains("square"));
}

#[test]
fn usage_errors() {
    assert_eq!(fatpoint(&["hilbert"]).status.code(), Some(2));
    assert_eq!(fatpoint(&["hilbert", "--uniform", "3", "1", "--degrees", "nine"]).status.code(), Some(2));
    assert_eq!(fatpoint(&["certify", "--ninefold", "--m", "2"]).status.code(), Some(2));
}

#[test]
fn survey_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = fatpoint(&["survey", "--n", "10..13", "--m", "1..3", "--format", "csv", "--seed", "1", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("12 rows, 12 match"));
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, fatpoint_core::survey::SURVEY_COLUMNS);
    let rows: Vec<fatpoint_core::survey::SurveyRow> = rdr.deserialize().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r.matches));
}

#[test]
fn survey_json_and_empty() {
    let j = stdout(&["survey", "--n", "16..16", "--m", "1..2", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&j).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["match"] == true));
    let e = stdout(&["survey", "--n", "12..11", "--m", "1..3"]);
    assert_eq!(e.trim_end(), fatpoint_core::survey::SURVEY_COLUMNS.join(","));
    assert_eq!(stdout(&["survey", "--n", "12..11", "--m", "1..3", "--format", "json"]).trim(), "[]");
}

#[test]
fn failed_write_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = fatpoint(&["survey", "--n", "10..10", "--m", "1..1", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!path.exists());
}

#[test]
fn repeated_runs_are_identical() {
    for args in [
        &["survey", "--n", "10..11", "--m", "1..2", "--seed", "5"][..],
        &["resolution", "--uniform", "12", "3", "--seed", "2"],
        &["hilbert", "--mults", "3,2,2,1,1", "--engine", "actual", "--seed", "9"],
    ] {
        let a = fatpoint(args);
        let b = fatpoint(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let seq = fatpoint(&["survey", "--n", "10..11", "--m", "1..2", "--sequential"]);
    let par = fatpoint(&["survey", "--n", "10..11", "--m", "1..2"]);
    assert_eq!(seq.stdout, par.stdout);
}
