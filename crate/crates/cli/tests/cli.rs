use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn hmset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hmset"))
        .args(args)
        .env_remove("HMSET_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn coefficient_table() {
    let out = hmset(&["coeffs", "--k", "4", "--m", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l == "3,3"));
    let check = hmset(&[
        "coeffs", "--k", "4..6", "--m", "2", "--n", "9", "--format", "json",
    ]);
    assert!(check.status.success());
    assert_eq!(json(&check)["reports"].as_array().unwrap().len(), 3);
}

#[test]
fn construct_and_count() {
    let out = hmset(&[
        "construct",
        "hm",
        "--n",
        "9",
        "--k",
        "4",
        "--m",
        "1",
        "--count-only",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "53");
    let out = hmset(&[
        "count", "--n", "7", "--k", "4", "--m", "2", "--format", "json",
    ]);
    let v = json(&out);
    assert_eq!(v["hm_size"], "67");
    assert_eq!(v["ekr_size"], "71");
    let out = hmset(&[
        "construct",
        "v-star",
        "--n",
        "7",
        "--k",
        "4",
        "--m",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(json(&out)["size"], 39);
    assert_eq!(json(&out)["family"], "v-star");
}

#[test]
fn theorem_report_is_stable_across_workers() {
    let run = |workers: &str| {
        hmset(&[
            "verify-theorem",
            "--n",
            "6",
            "--k",
            "4",
            "--m",
            "3",
            "--workers",
            workers,
        ])
    };
    let one = run("1");
    assert!(one.status.success());
    let v = json(&one);
    assert_eq!(v["bound"], "53");
    assert_eq!(v["uniqueness_verdict"], "unique-iso");
    assert_eq!(v["params"]["m"], 3);
    assert!(v["tool_version"].is_string());
    assert!(v.get("runtime_ms").is_none());
    assert_eq!(one.stdout, run("3").stdout);
    assert_eq!(one.stdout, run("1").stdout);
}

#[test]
fn theorem_at_seven_points() {
    let out = hmset(&[
        "verify-theorem",
        "--n",
        "7",
        "--k",
        "4",
        "--m",
        "2",
        "--workers",
        "2",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["bound"], "67");
    assert_eq!(v["uniqueness_verdict"], "unique-iso");
    assert_eq!(v["families_checked"], 1_422_564);
    assert_eq!(v["lemma_violations"].as_array().unwrap().len(), 0);
}

#[test]
fn timing_is_opt_in() {
    let out = hmset(&[
        "verify-theorem",
        "--n",
        "5",
        "--k",
        "4",
        "--m",
        "inf",
        "--timing",
    ]);
    assert!(out.status.success());
    assert!(json(&out)["runtime_ms"].is_u64());
}

#[test]
fn exit_codes() {
    // Hypotheses not met.
    assert_eq!(
        hmset(&["verify-theorem", "--n", "6", "--k", "3", "--m", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hmset(&["verify-theorem", "--n", "5", "--k", "4", "--m", "2"])
            .status
            .code(),
        Some(2)
    );
    // Malformed arguments.
    assert_eq!(
        hmset(&["count", "--n", "7", "--k", "4", "--m", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hmset(&["grid", "--n", "6-4", "--k", "4", "--m", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hmset(&["frobnicate"]).status.code(), Some(2));
    // Enumeration cap.
    assert_eq!(
        hmset(&["enumerate-maximal", "--n", "8", "--count-only"])
            .status
            .code(),
        Some(2)
    );
    // A statement that fails reports a violation.
    let out = hmset(&[
        "verify-lemma",
        "valuable-structure",
        "--n",
        "5",
        "--k",
        "4",
        "--m",
        "inf",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json(&out)["violations"].as_array().unwrap().is_empty());
    // Unchecked runs proceed past the k >= 4 hypothesis.
    let out = hmset(&[
        "verify-theorem",
        "--n",
        "6",
        "--k",
        "3",
        "--m",
        "2",
        "--unchecked",
    ]);
    assert_ne!(out.status.code(), Some(2));
}

#[test]
fn lemma_checks() {
    for args in [
        &["verify-lemma", "pair-rule", "--n", "5"][..],
        &["verify-lemma", "twist", "--n", "4"],
        &[
            "verify-lemma",
            "twist",
            "--n",
            "6",
            "--samples",
            "300",
            "--seed",
            "9",
        ],
        &[
            "verify-lemma",
            "layer-bound",
            "--n",
            "7",
            "--k",
            "4",
            "--m",
            "2",
        ],
        &[
            "verify-lemma",
            "missing-layer",
            "--n",
            "6",
            "--k",
            "4",
            "--m",
            "inf",
        ],
    ] {
        let out = hmset(args);
        assert!(
            out.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(json(&out)["violations"].as_array().unwrap().len(), 0);
    }
    assert_eq!(
        hmset(&["verify-lemma", "layer-bound", "--n", "6"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn enumeration() {
    let out = hmset(&["enumerate-maximal", "--n", "5", "--count-only"]);
    assert_eq!(stdout(&out).trim(), "81");
    let out = hmset(&[
        "enumerate-maximal",
        "--n",
        "5",
        "--up-to-iso",
        "--count-only",
    ]);
    assert_eq!(stdout(&out).trim(), "7");
    let out = hmset(&["enumerate-maximal", "--n", "4", "--up-to-iso"]);
    let v = json(&out);
    let orbits: u64 = v["orbit_sizes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o.as_u64().unwrap())
        .sum();
    assert_eq!(orbits, 12);
    let text = stdout(&hmset(&[
        "enumerate-maximal",
        "--n",
        "3",
        "--format",
        "text",
    ]));
    assert_eq!(text.matches("\n\n").count(), 3);
}

#[test]
fn grid_summary() {
    let out = hmset(&["grid", "--n", "5..6", "--k", "4", "--m", "2,inf"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("n,k,m,"));
    assert_eq!(lines.len(), 4, "{csv}");
    assert!(lines.iter().any(|l| l.starts_with("6,4,inf,4,1,53,")));
}

#[test]
fn output_locations() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_hmset"))
        .args([
            "count", "--n", "7", "--k", "4", "--m", "2", "--format", "json",
        ])
        .env("HMSET_OUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let written = fs::read_to_string(dir.path().join("count-n7-k4-m2.json")).unwrap();
    assert!(written.contains("\"hm_size\": \"67\""));

    let family = dir.path().join("hm.txt");
    let out = hmset(&[
        "construct",
        "hm",
        "--n",
        "6",
        "--k",
        "4",
        "--m",
        "2",
        "--out",
        family.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let inspected = hmset(&["inspect", family.to_str().unwrap(), "--format", "json"]);
    let v = json(&inspected);
    assert_eq!(v["size"], 45);
    assert_eq!(v["maximal_intersecting"], true);
    assert_eq!(v["trivial"], false);

    let sets = dir.path().join("v.txt");
    hmset(&[
        "construct",
        "v",
        "--n",
        "7",
        "--k",
        "4",
        "--m",
        "2",
        "--out",
        sets.to_str().unwrap(),
    ]);
    let v = json(&hmset(&[
        "inspect",
        sets.to_str().unwrap(),
        "--sets",
        "--format",
        "json",
    ]));
    assert_eq!(v["size"], 63);
    assert_eq!(v["maximal_intersecting"], true);
    assert_eq!(v["common_element"], false);

    assert_eq!(
        hmset(&["inspect", "/nonexistent/file"]).status.code(),
        Some(2)
    );
}
