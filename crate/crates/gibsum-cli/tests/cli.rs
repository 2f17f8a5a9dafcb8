//! End-to-end tests of the `gibsum` binary: worked examples, formats, file
//! round-trips, and exit codes.

use std::process::{Command, Output};

fn gibsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gibsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = gibsum(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn term_mu_pisano_print_bare_integers() {
    assert_eq!(
        stdout_of(&["term", "--g0", "2", "--g1", "7", "--n", "16"]),
        "8129\n"
    );
    assert_eq!(stdout_of(&["mu", "--g0", "-1", "--g1", "3"]), "11\n");
    assert_eq!(
        stdout_of(&["pisano", "--g0", "2", "--g1", "1", "--m", "5"]),
        "4\n"
    );
    assert_eq!(
        stdout_of(&["term", "--g0", "0", "--g1", "1", "--n", "-5"]),
        "5\n"
    );
}

#[test]
fn gcd_classifies_squares() {
    let out = stdout_of(&["gcd", "--g0", "3", "--g1", "1", "--k", "3"]);
    assert!(out.contains("value: 2"), "{out}");
    assert!(out.contains("case: odd"), "{out}");
    assert!(out.contains("oracle: agree"), "{out}");

    let out = stdout_of(&["gcd", "--g0", "0", "--g1", "2", "--k", "4"]);
    assert!(out.contains("value: 12"), "{out}");
    assert!(out.contains("scale: 4"), "{out}");

    let out = stdout_of(&["gcd", "--g0", "0", "--g1", "1", "--k", "1"]);
    assert!(out.contains("value: 1"), "{out}");

    let out = stdout_of(&[
        "gcd", "--g0", "2", "--g1", "1", "--k", "4", "--format", "json",
    ]);
    let row: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(row["value"], "15");
    assert_eq!(row["case"], "EvenFiveDividesMu");
    assert_eq!(row["oracle"], "agree");
}

#[test]
fn gcd_higher_powers_report_the_stability_flagged_oracle() {
    let out = stdout_of(&[
        "gcd",
        "--g0",
        "0",
        "--g1",
        "1",
        "--k",
        "6",
        "--power",
        "3",
        "--oracle-windows",
        "40",
    ]);
    assert!(out.contains("value: 2"), "{out}");
    assert!(out.contains("stable: yes"), "{out}");
    assert!(out.contains("conjectural"), "{out}");
}

#[test]
fn gcd1_is_the_first_power_alias() {
    let out = stdout_of(&["gcd1", "--g0", "2", "--g1", "7", "--k", "15"]);
    assert!(out.contains("value: 62"), "{out}");
    assert!(out.contains("first-power"), "{out}");
    let direct = stdout_of(&["gcd", "--g0", "2", "--g1", "7", "--k", "15", "--power", "1"]);
    assert_eq!(out, direct);
}

#[test]
fn usage_errors_exit_2() {
    let out = gibsum(&["gcd", "--g0", "0", "--g1", "0", "--k", "3"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));

    let out = gibsum(&["gcd", "--g0", "1", "--g1", "1", "--k", "0"]);
    assert_eq!(exit_code(&out), 2);

    let out = gibsum(&["gcd", "--g0", "1", "--g1", "x", "--k", "3"]);
    assert_eq!(exit_code(&out), 2);

    let out = gibsum(&["--definitely-not-a-flag"]);
    assert_eq!(exit_code(&out), 2);

    let out = gibsum(&["conjecture-cubes", "--setting", "fibonacci", "--k-max", "7"]);
    assert_eq!(exit_code(&out), 2);

    let out = gibsum(&[
        "periodicity",
        "--g0",
        "2",
        "--g1",
        "4",
        "--power",
        "2",
        "--k-max",
        "149",
    ]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("reduce"), "{stderr}");
}

#[test]
fn table_csv_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = gibsum(&[
        "table",
        "--k-min",
        "1",
        "--k-max",
        "20",
        "--g0",
        "3",
        "--g1",
        "1",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);

    let mut reader = csv::Reader::from_path(&path).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert_eq!(
        headers,
        csv::StringRecord::from(vec!["k", "case", "fib", "lucas", "gib"])
    );
    let records: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(records.len(), 20);

    // Spot checks against the closed forms.
    let row = |k: usize| &records[k - 1];
    assert_eq!(&row(3)[2], "2");
    assert_eq!(&row(3)[3], "2");
    assert_eq!(&row(10)[2], "55");
    assert_eq!(&row(10)[3], "275");
    assert_eq!(&row(5)[4], "11");
    assert_eq!(&row(15)[4], "22");

    // Parsing the emitted file reproduces the JSON emission bit-exactly.
    let json_out = stdout_of(&[
        "table", "--k-min", "1", "--k-max", "20", "--g0", "3", "--g1", "1", "--format", "json",
    ]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&json_out).unwrap();
    assert_eq!(rows.len(), records.len());
    for (json_row, csv_row) in rows.iter().zip(&records) {
        assert_eq!(json_row["k"].as_str().unwrap(), &csv_row[0]);
        assert_eq!(json_row["case"].as_str().unwrap(), &csv_row[1]);
        assert_eq!(json_row["fib"].as_str().unwrap(), &csv_row[2]);
        assert_eq!(json_row["lucas"].as_str().unwrap(), &csv_row[3]);
        assert_eq!(json_row["gib"].as_str().unwrap(), &csv_row[4]);
    }
}

#[test]
fn table_write_failure_exits_3() {
    let out = gibsum(&[
        "table",
        "--k-min",
        "1",
        "--k-max",
        "3",
        "--format",
        "csv",
        "--out",
        "/nonexistent-dir/table.csv",
    ]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn conjecture_cubes_reports_disagreements_without_failing() {
    let out = gibsum(&["conjecture-cubes", "--setting", "fibonacci", "--k-max", "8"]);
    assert_eq!(
        exit_code(&out),
        0,
        "conjecture evidence must be non-blocking"
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("k=6"), "{text}");
    assert!(text.contains("oracle=2"), "{text}");
    assert!(text.contains("conjectured=4"), "{text}");
    assert!(text.contains("DISAGREE"), "{text}");

    let out = stdout_of(&[
        "conjecture-cubes",
        "--setting",
        "lucas",
        "--k-max",
        "6",
        "--format",
        "json",
    ]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["k"], "6");
    assert_eq!(rows[2]["oracle"], "2");
    assert_eq!(rows[2]["agrees"], true);
}

#[test]
fn periodicity_reports_the_example_periods() {
    let out = stdout_of(&[
        "periodicity",
        "--g0",
        "-1",
        "--g1",
        "3",
        "--power",
        "2",
        "--k-max",
        "149",
    ]);
    assert!(out.contains("candidate period: 30"), "{out}");
    assert!(out.contains("k = 15 (mod 30) -> 22"), "{out}");
    assert!(out.contains("k = 5 (mod 30) -> 11"), "{out}");

    let out = stdout_of(&[
        "periodicity",
        "--g0",
        "-1",
        "--g1",
        "3",
        "--power",
        "1",
        "--k-max",
        "149",
    ]);
    assert!(out.contains("candidate period: 6"), "{out}");

    let out = stdout_of(&[
        "periodicity",
        "--g0",
        "0",
        "--g1",
        "1",
        "--power",
        "2",
        "--k-max",
        "149",
        "--format",
        "json",
    ]);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["candidate_period"], "6");
}

#[test]
fn verify_small_grid_exits_0() {
    let out = gibsum(&[
        "verify",
        "--max-seed",
        "2",
        "--max-k",
        "6",
        "--windows",
        "5",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("all"), "{text}");
    assert!(text.contains("oracle-vs-closed-squares"), "{text}");
    assert!(text.contains("pisano"), "{text}");
}

#[test]
fn verify_minimal_grid_exits_0() {
    let out = gibsum(&["verify", "--max-seed", "1", "--max-k", "1"]);
    assert_eq!(
        exit_code(&out),
        0,
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn table_text_format_and_seed_pairing() {
    let out = stdout_of(&[
        "table", "--k-min", "3", "--k-max", "5", "--g0", "3", "--g1", "1",
    ]);
    let mut lines = out.lines();
    let header = lines.next().unwrap();
    assert!(header.contains("k") && header.contains("case") && header.contains("gib"));
    assert!(out.contains("11"), "{out}"); // gib column at k = 5

    // A lone seed flag is a usage error.
    let out = gibsum(&["table", "--k-min", "1", "--k-max", "3", "--g0", "3"]);
    assert_eq!(exit_code(&out), 2);
}
