use std::fs;
use std::process::{Command, Output};

use cdtorus::VerificationReport;

fn cdtorus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdtorus"))
        .args(args)
        .env("CDTORUS_SEED", "7")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_complex() {
    let out = cdtorus(&["table", "C"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "j,0,1\n0,+0,+1\n1,+1,-0\n");
}

#[test]
fn table_tensor_prefixes_octonions() {
    let o = stdout(&cdtorus(&["table", "O"]));
    let b = stdout(&cdtorus(&["table", "B(0,1)"]));
    let b_rows: Vec<&str> = b.lines().collect();
    assert_eq!(b_rows.len(), 17);
    for (j, row) in o.lines().skip(1).enumerate() {
        let cells: Vec<&str> = row.split(',').skip(1).collect();
        let b_cells: Vec<&str> = b_rows[j + 1].split(',').skip(1).take(8).collect();
        assert_eq!(cells, b_cells);
    }
}

#[test]
fn unknown_table_is_an_error() {
    let out = cdtorus(&["table", "X"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown algebra"));
}

#[test]
fn empty_report_is_empty_array() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = cdtorus(&["report", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&path).unwrap().trim(), "[]");
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let args = [
            "report",
            "--case",
            "1,0",
            "--case",
            "0,0",
            "--no-timing",
            "--out",
            path.to_str().unwrap(),
        ];
        assert!(cdtorus(&args).status.success());
        fs::read_to_string(path).unwrap()
    };
    let first = run("a.json");
    assert_eq!(first, run("b.json"));

    let reports: Vec<VerificationReport> = serde_json::from_str(&first).unwrap();
    assert_eq!(
        reports.iter().map(|r| (r.p, r.q)).collect::<Vec<_>>(),
        [(1, 0), (0, 0)]
    );
    assert_eq!(
        serde_json::to_string_pretty(&reports).unwrap() + "\n",
        first
    );
    let names: Vec<&str> = reports[0].checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names.len(), 11);
    assert!(reports
        .iter()
        .all(|r| r.passed() && r.checks.iter().all(|c| c.millis == 0)));
    assert_eq!(
        reports[0].check("splitting_pairs").unwrap().actual,
        "4 J-planes"
    );
}

#[test]
fn verify_single_case_passes() {
    let out = cdtorus(&["verify", "--p", "1", "--q", "0", "--exact"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("B(1,0)  [PASS]"), "{text}");
    assert!(text.contains("generated_rank"));
}

#[test]
fn verify_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.json");
    let out = cdtorus(&["verify", "--case", "0,1", "--json", path.to_str().unwrap()]);
    assert!(out.status.success());
    let reports: Vec<VerificationReport> =
        serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].check("rho_image_rank").unwrap().expected, "128");
}

#[test]
fn resource_guard_failure_exits_nonzero() {
    let out = cdtorus(&["verify", "--case", "1,2", "--no-timing"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("B(1,2): check"));
}

#[test]
fn composite_mod_prime_is_rejected() {
    let out = cdtorus(&["verify", "--case", "0,0", "--mod-prime", "1000"]);
    assert_eq!(out.status.code(), Some(2));
}
