//! End-to-end tests of the binary: JSON envelopes, exit codes, streams.

use std::process::{Command, Output};

fn cyclokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclokit"))
        .args(args)
        .env_remove("CYCLOKIT_SEED")
        .output()
        .expect("binary runs")
}

/// The envelope is the last stdout line.
fn envelope(output: &Output) -> serde_json::Value {
    let stdout = String::from_utf8_lossy(&output.stdout);
    let last = stdout.lines().last().expect("stdout has output");
    serde_json::from_str(last).expect("envelope is JSON")
}

#[test]
fn phi_envelope_and_exit_codes() {
    let out = cyclokit(&["phi", "6"]);
    assert!(out.status.success());
    let env = envelope(&out);
    assert_eq!(env["status"], "ok");
    assert_eq!(env["result"]["coefficients"], serde_json::json!(["1", "-1", "1"]));

    let out = cyclokit(&["phi", "1"]);
    let env = envelope(&out);
    assert_eq!(env["result"]["coefficients"], serde_json::json!(["-1", "1"]));

    let out = cyclokit(&["phi", "12", "--algorithm", "all"]);
    assert!(out.status.success());
    let env = envelope(&out);
    assert_eq!(env["result"]["agreement"], serde_json::json!(true));

    let out = cyclokit(&["phi", "30", "--algorithm", "all"]);
    let env = envelope(&out);
    let algs = env["result"]["algorithms"].as_array().unwrap();
    assert_eq!(algs.len(), 4, "square-free index runs all four routes");

    let out = cyclokit(&["phi", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(envelope(&out)["status"], "precondition_error");
}

#[test]
fn psi_hstar_ramanujan_toth() {
    let out = cyclokit(&["psi", "6"]);
    assert_eq!(
        envelope(&out)["result"]["coefficients"],
        serde_json::json!(["-1", "-1", "0", "1", "1"])
    );
    let out = cyclokit(&["psi", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = cyclokit(&["hstar", "6", "3"]);
    assert_eq!(
        envelope(&out)["result"]["values"],
        serde_json::json!(["1", "1", "0", "-1"])
    );

    let out = cyclokit(&["ramanujan", "6", "2"]);
    assert_eq!(envelope(&out)["result"]["value"], serde_json::json!(-1));

    let out = cyclokit(&["toth", "4"]);
    let env = envelope(&out);
    assert_eq!(env["result"]["coefficients"], serde_json::json!(["-2", "0", "-2"]));
    assert_eq!(env["result"]["tau"], serde_json::json!(2));
    assert_eq!(env["result"]["divisible"]["exact"], serde_json::json!(true));
}

#[test]
fn divides_variants() {
    let out = cyclokit(&["divides", "--poly", "-1,0,0,0,0,0,1", "--cyclotomic", "6"]);
    assert!(out.status.success());
    assert_eq!(envelope(&out)["result"]["verdict"], serde_json::json!(true));

    // A false verdict is still a successful run.
    let out = cyclokit(&["divides", "--poly", "1,0,1", "--cyclotomic", "2"]);
    assert!(out.status.success());
    let env = envelope(&out);
    assert_eq!(env["result"]["verdict"], serde_json::json!(false));
    assert_eq!(env["result"]["witnesses"][0][1], serde_json::json!("2"));

    let out = cyclokit(&["divides", "--poly", "1,1", "--phi-p", "2", "--s", "1"]);
    assert_eq!(envelope(&out)["result"]["verdict"], serde_json::json!(true));

    let out = cyclokit(&["divides", "--poly", "-1,0,0,0,1", "--zn", "2"]);
    assert_eq!(envelope(&out)["result"]["verdict"], serde_json::json!(true));

    let out = cyclokit(&["divides", "--poly", "-4,0,1", "--zn-eta", "2", "--eta", "4"]);
    assert_eq!(envelope(&out)["result"]["verdict"], serde_json::json!(true));

    // Descending input: z^2 + 1 written highest power first.
    let out = cyclokit(&["divides", "--poly", "1,0,1", "--descending", "--cyclotomic", "4"]);
    assert_eq!(envelope(&out)["result"]["verdict"], serde_json::json!(true));

    // Degree precondition carries both numbers and exits 2.
    let out = cyclokit(&["divides", "--poly", "1,1", "--cyclotomic", "12"]);
    assert_eq!(out.status.code(), Some(2));
    let env = envelope(&out);
    let msg = env["result"]["error"].as_str().unwrap();
    assert!(msg.contains('4') && msg.contains('1'), "{msg}");

    // Polynomial from a JSON file.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, r#"["-1","0","0","0","0","0","1"]"#).unwrap();
    let spec = format!("@{}", path.display());
    let out = cyclokit(&["divides", "--poly", &spec, "--cyclotomic", "6"]);
    assert_eq!(envelope(&out)["result"]["verdict"], serde_json::json!(true));
}

#[test]
fn verify_streams_reports() {
    let out = cyclokit(&["verify", "--suite", "ramanujan", "--max-n", "20", "--jobs", "2"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = stdout.lines().collect();
    assert!(lines.len() > 10, "expected a JSONL stream");
    // Every line is JSON; all but the last are reports.
    for line in &lines[..lines.len() - 1] {
        let v: serde_json::Value = serde_json::from_str(line).expect("JSONL");
        assert_eq!(v["pass"], serde_json::json!(true));
    }
    let env: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(env["status"], "ok");
    assert_eq!(env["result"]["failures"], serde_json::json!(0));

    // failures-only on a passing sweep: just the envelope.
    let out = cyclokit(&[
        "verify",
        "--suite",
        "coefficients",
        "--max-n",
        "10",
        "--failures-only",
    ]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.lines().count(), 1);

    let out = cyclokit(&["verify", "--suite", "bogus", "--max-n", "10"]);
    assert_eq!(out.status.code(), Some(2));

    let out = cyclokit(&["verify", "--suite", "all", "--max-n", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_csv_and_seed_env() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("records.csv");
    let path_str = csv_path.display().to_string();
    let out = cyclokit(&[
        "bench",
        "--max-degree",
        "64",
        "--n-list",
        "6,12",
        "--trials",
        "4",
        "--seed",
        "5",
        "--out",
        &path_str,
    ]);
    assert!(out.status.success());
    let env = envelope(&out);
    assert_eq!(env["result"]["seed"], serde_json::json!(5));
    assert_eq!(env["result"]["verdict_agreement"], serde_json::json!(1.0));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("method,N,degree,trial,ns_elapsed,op_count,verdict\n"));

    // CYCLOKIT_SEED overrides the flag.
    let out = Command::new(env!("CARGO_BIN_EXE_cyclokit"))
        .args(["bench", "--max-degree", "32", "--n-list", "6", "--trials", "2", "--seed", "5", "--out", &path_str])
        .env("CYCLOKIT_SEED", "77")
        .output()
        .unwrap();
    assert_eq!(envelope(&out)["result"]["seed"], serde_json::json!(77));

    // "-" streams the CSV to stdout.
    let out = cyclokit(&[
        "bench",
        "--max-degree",
        "32",
        "--n-list",
        "6",
        "--trials",
        "2",
        "--out",
        "-",
    ]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.starts_with("method,N,degree,trial"));
}

#[test]
fn bench_is_deterministic_for_fixed_seed() {
    let run = || {
        let out = cyclokit(&[
            "bench", "--max-degree", "48", "--n-list", "6", "--trials", "4", "--seed", "11",
            "--out", "-",
        ]);
        let stdout = String::from_utf8_lossy(&out.stdout).to_string();
        // Strip the timing column, which is the only nondeterministic field.
        stdout
            .lines()
            .map(|l| {
                l.split(',')
                    .enumerate()
                    .filter(|(i, _)| *i != 4)
                    .map(|(_, f)| f)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
}
