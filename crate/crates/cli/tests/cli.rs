use std::process::{Command, Output};

use su11_cli::{Payload, CSV_COLUMNS};
use su11_core::analysis::Verdict;
use su11_core::{rat, Sign};

fn su11(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su11"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Payload, String) {
    let mut full = args.to_vec();
    full.extend(["--output", "json"]);
    let o = su11(&full);
    let text = stdout(&o);
    let payload: Payload = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (o.status.code().unwrap(), payload, text)
}

#[test]
fn verify_complementary_series_passes() {
    let (code, payload, _) = json(&[
        "verify", "--lambda", "1/2", "--parity", "even", "--bound", "8",
    ]);
    assert_eq!(code, 0);
    let Payload::Verify(v) = payload else {
        panic!("wrong payload")
    };
    assert_eq!(v.conjecture.verdict, Verdict::Pass);
    assert!(v.algebra.holds());
    assert_eq!(v.conjecture.records.len(), 17);
}

#[test]
fn classify_three_even() {
    let (code, payload, _) = json(&["classify", "--lambda", "3", "--parity", "even"]);
    assert_eq!(code, 0);
    let Payload::Classify(c) = payload else {
        panic!("wrong payload")
    };
    let flags: Vec<bool> = c.constituents.iter().map(|v| v.unitary).collect();
    assert_eq!(flags, [false, true, true]);
}

#[test]
fn point_form_table_values() {
    let (code, payload, _) = json(&[
        "form-table",
        "--point-m",
        "1",
        "--orbit",
        "0",
        "--bound",
        "3",
    ]);
    assert_eq!(code, 0);
    let Payload::FormTable(t) = payload else {
        panic!("wrong payload")
    };
    let ratios: Vec<_> = t.rows.iter().map(|r| r.ratio.clone().unwrap()).collect();
    assert_eq!(ratios, [rat(1, 1), rat(-2, 1), rat(12, 1), rat(-144, 1)]);
    assert!(t.rows.iter().all(|r| r.g_sign == Sign::Positive));
}

#[test]
fn csv_columns_are_fixed() {
    let o = su11(&[
        "form-table",
        "--lambda",
        "5/2",
        "--parity",
        "odd",
        "--bound",
        "2",
        "--output",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .unwrap()
        .iter()
        .map(str::to_string)
        .collect();
    assert_eq!(header, CSV_COLUMNS);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    // n = 1/2 is the reference vector.
    let reference = rows.iter().find(|r| &r[0] == "1").unwrap();
    assert_eq!((&reference[3], &reference[4]), ("1", "1"));
}

#[test]
fn json_round_trip_is_idempotent() {
    let cases: [&[&str]; 6] = [
        &[
            "describe", "--lambda", "3", "--parity", "even", "--bound", "3",
        ],
        &[
            "form-table",
            "--lambda",
            "7/3",
            "--parity",
            "odd",
            "--bound",
            "4",
        ],
        &["verify", "--point-m", "2", "--orbit", "inf", "--bound", "5"],
        &[
            "jantzen",
            "--lambda",
            "2",
            "--parity",
            "odd",
            "--epsilon",
            "1/8",
            "--bound",
            "4",
        ],
        &["classify", "--lambda", "0", "--parity", "odd"],
        &["oracle"],
    ];
    for args in cases {
        let (_, payload, text) = json(args);
        let again = serde_json::to_string_pretty(&payload).unwrap() + "\n";
        assert_eq!(again, text, "{args:?}");
        let reparsed: Payload = serde_json::from_str(&again).unwrap();
        assert_eq!(reparsed, payload);
    }
}

#[test]
fn rationals_and_signs_have_fixed_json_shape() {
    let (_, _, text) = json(&["form-table", "--lambda", "1/2", "--bound", "1"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let row = &v["report"]["rows"][0];
    assert_eq!(row["ratio"], serde_json::json!({"num": -3, "den": 1}));
    assert_eq!(row["u_sign"], "negative");
    assert_eq!(v["command"], "form-table");
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 8] = [
        &["verify", "--lambda", "0.5"],
        &["verify", "--lambda", "1e3"],
        &["verify", "--lambda", "1/0"],
        &["verify", "--lambda", "3", "--parity", "even"],
        &["form-table", "--lambda", "2", "--parity", "odd"],
        &["jantzen", "--lambda", "5/2"],
        &["classify", "--lambda", "-1"],
        &["describe"],
    ];
    for args in cases {
        let o = su11(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn constituents_are_reachable_with_part() {
    let o = su11(&[
        "verify", "--lambda", "3", "--parity", "even", "--part", "w1", "--bound", "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = su11(&[
        "verify", "--lambda", "3", "--parity", "even", "--part", "infinity",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = su11(&["verify", "--lambda", "5/2", "--part", "w1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("su11-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let o = su11(&[
        "form-table",
        "--point-m",
        "0",
        "--bound",
        "2",
        "--output",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("index_twice,"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn oracle_on_a_series() {
    let (code, payload, _) = json(&["oracle", "--lambda", "7/2", "--bound", "5"]);
    assert_eq!(code, 0);
    let Payload::Oracle(r) = payload else {
        panic!("wrong payload")
    };
    // Convergent indices for λ = 7/2 are |n| < 9/4 with n integral.
    assert_eq!(r.rows.len(), 5);
    assert!(r.rows.iter().all(|row| row.ok));
}
