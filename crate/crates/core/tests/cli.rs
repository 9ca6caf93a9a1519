use std::process::{Command, Output};

use uniform_eq::experiments::{EntropySamplesRecord, Eq5Record};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uniform-eq"))
        .args(args)
        .output()
        .expect("runs the CLI")
}

fn temp(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("uniform_eq_cli_{}_{name}", std::process::id()))
}

#[test]
fn exit_code_counts_failed_verdicts() {
    let ok = run(&["verify", "--family", "matching_pennies", "--epsilon", "0.01"]);
    assert!(ok.status.success());

    let bad = run(&[
        "verify",
        "--family",
        "matching_pennies",
        "--profile",
        "1,0;1,0",
        "--epsilon",
        "0.1",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("1 verdict(s) failed"));

    let none = run(&[
        "solve-exhaustive",
        "--family",
        "matching_pennies",
        "--k",
        "1",
        "--epsilon",
        "0.4",
    ]);
    assert_eq!(none.status.code(), Some(1));
}

#[test]
fn csv_and_json_records_hold_the_same_values() {
    let args = [
        "sweep-eq5",
        "--family",
        "matching_pennies",
        "--epsilon",
        "0.5",
        "--k-values",
        "8,16",
        "--trials",
        "3000",
    ];
    let json = run(&[&args[..], &["--format", "json"]].concat());
    let csv = run(&[&args[..], &["--format", "csv"]].concat());
    let from_json: Vec<Eq5Record> = serde_json::from_slice(&json.stdout).unwrap();
    let from_csv: Vec<Eq5Record> = csv::Reader::from_reader(csv.stdout.as_slice())
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap();
    assert_eq!(from_json.len(), 8);
    assert_eq!(from_json, from_csv);

    let args = [
        "entropy-samples",
        "--families",
        "matching_pennies,constant",
        "--k",
        "30",
        "--epsilon",
        "0.6",
        "--runs",
        "5",
    ];
    let json = run(&[&args[..], &["--format", "json"]].concat());
    let csv = run(&[&args[..], &["--format", "csv"]].concat());
    let from_json: Vec<EntropySamplesRecord> = serde_json::from_slice(&json.stdout).unwrap();
    let from_csv: Vec<EntropySamplesRecord> = csv::Reader::from_reader(csv.stdout.as_slice())
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap();
    assert_eq!(from_json, from_csv);
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let path = temp("bounds.csv");
    let args = ["bounds", "--n", "3", "--m", "4", "--epsilon", "0.6", "--format", "csv"];
    let stdout = run(&args).stdout;
    assert!(run(&[&args[..], &["--out", path.to_str().unwrap()]].concat())
        .status
        .success());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
    std::fs::remove_file(path).ok();
}

#[test]
fn game_files_round_trip_through_gen() {
    let path = temp("rps.json");
    let p = path.to_str().unwrap();
    assert!(run(&["gen", "--family", "generalized_rps", "--m", "5", "--out", p])
        .status
        .success());
    let game = uniform_eq::io::load_game(&path).unwrap();
    assert_eq!(
        game,
        uniform_eq::generators::generate(
            uniform_eq::generators::Family::GeneralizedRps,
            uniform_eq::generators::FamilyParams {
                m: 5,
                ..Default::default()
            },
        )
        .unwrap()
        .game
    );
    let out = run(&["solve-exhaustive", "--game", p, "--k", "5", "--epsilon", "0.01"]);
    assert!(out.status.success());
    std::fs::remove_file(path).ok();
}

#[test]
fn malformed_input_is_reported() {
    let path = temp("bad.json");
    std::fs::write(
        &path,
        r#"{"version": 1, "action_counts": [2, 2], "payoffs": [[0, 0, 0, 0], [0, 0, 1.5, 0]]}"#,
    )
    .unwrap();
    let out = run(&["entropy", "--game", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("player 1") && err.contains("index 2"), "{err}");
    std::fs::remove_file(path).ok();

    let out = run(&["urs", "--family", "matching_pennies", "--k", "4", "--epsilon", "1.5"]);
    assert!(!out.status.success());
    let out = run(&["sweep-eq5", "--family", "random", "--epsilon", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}
