use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tensorcp"));
    cmd.env_remove("TENSORCP_SEED");
    cmd
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("tensorcp-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn check_exit_codes_follow_the_verdict() {
    let holds = fixture("block_adequate.tns");
    let fails = fixture("sufficient_not_adequate.tns");
    let unknown = fixture("adequate_coupled.tns");
    assert_eq!(code(&["check", "column-adequate", &holds, "--budget", "500"]), 0);
    assert_eq!(code(&["check", "column-adequate", &fails, "--budget", "500"]), 1);
    assert_eq!(code(&["check", "column-adequate", &unknown, "--budget", "500"]), 2);
    assert_eq!(code(&["check", "row-diagonal", &fixture("row_diagonal.tns")]), 0);
    assert_eq!(code(&["check", "row_diagonal", &holds]), 1);
}

#[test]
fn usage_and_runtime_errors_have_distinct_codes() {
    let t = fixture("block_adequate.tns");
    assert_eq!(code(&["check", "no-such-class", &t]), 64);
    assert_eq!(code(&["no-such-command"]), 64);
    assert_eq!(code(&["check", "p0"]), 64);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["check", "p0", "/nonexistent/tensor.tns"]), 3);
    let bad = temp_file("bad.tns", "3 2\n1 1 x 1\n");
    let out = run(&["tensor", "info", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    std::fs::remove_file(bad).unwrap();
}

#[test]
fn uniqueness_commands_exit_by_answer() {
    let unique = fixture("tcp_cubic.tns");
    let not_unique = fixture("sufficient_not_adequate.tns");
    assert_eq!(code(&["tcp", "omega-unique", "--q", "0,-1", &unique]), 0);
    assert_eq!(code(&["tcp", "omega-unique", "--q", "1,-1", &not_unique]), 1);

    // M = [[1, -1], [-1, 1]] with q = (-1, 1): the family z = (1 + t, t) has w = 0
    let lcp = temp_file("lcp.txt", "2\n1 -1\n-1 1\n-1 1\n");
    assert_eq!(code(&["lcp", "w-unique", lcp.to_str().unwrap()]), 0);
    // M = 0, q = 0: every z >= 0 solves and w = 0, still unique
    let zero = temp_file("zero.txt", "2\n0 0\n0 0\n0 0\n");
    assert_eq!(code(&["lcp", "w-unique", zero.to_str().unwrap()]), 0);
    // M = [[-1, 0], [0, 1]], q = (1, 0): z = 0 gives w1 = 1, z = (1, 0) gives w1 = 0
    let split = temp_file("split.txt", "2\n-1 0\n0 1\n1 0\n");
    assert_eq!(code(&["lcp", "w-unique", split.to_str().unwrap()]), 1);
    for p in [lcp, zero, split] {
        std::fs::remove_file(p).unwrap();
    }
}

#[test]
fn json_output_has_the_documented_keys() {
    let fails = fixture("sufficient_not_adequate.tns");
    let v = json(&[
        "--format",
        "json",
        "check",
        "column-adequate",
        &fails,
        "--budget",
        "500",
    ]);
    for key in [
        "command",
        "verdict",
        "certificate",
        "counterexample",
        "solutions",
        "pieces",
        "timings",
        "details",
    ] {
        assert!(v.get(key).is_some(), "missing {key} in {v}");
    }
    assert_eq!(v["verdict"], "fails");
    assert!(v["counterexample"]["witness"]["x"].is_array());

    let holds = fixture("block_adequate.tns");
    let v = json(&["--format", "json", "check", "column-adequate", &holds]);
    assert_eq!(v["verdict"], "holds");
    assert!(!v["certificate"].is_null());
}

#[test]
fn seed_flag_and_environment_agree() {
    let t = fixture("p0_not_adequate.tns");
    let args = ["--format", "json", "check", "p", &t, "--budget", "300"];
    let flagged = bin().args(["--seed", "17"]).args(args).output().unwrap();
    let env = bin().env("TENSORCP_SEED", "17").args(args).output().unwrap();
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timings");
        v
    };
    assert_eq!(strip(&flagged), strip(&env));
}

#[test]
fn auxiliary_and_tensor_commands_print_exact_values() {
    let cubic = fixture("tcp_cubic.tns");
    let out = run(&["aux", "build", &cubic, "--delimited"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("1\t0\t0"), "{text}");

    let out = run(&["tensor", "apply", &cubic, "--x", "1/2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("1/4") && text.contains('9'), "{text}");
}

#[test]
fn reproduce_command_passes() {
    let out = run(&["reproduce-paper"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&["--format", "json", "reproduce-paper"]);
    assert!(v.to_string().contains("principal-subtensors"));
}
