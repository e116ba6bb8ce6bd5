#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

/// Every documented command with fixed arguments.
pub const DOCUMENTED: &[&[&str]] = &[
    &["encode", "--k", "2", "--L", "3", "--n", "6"],
    &["encode", "--k", "10", "--L", "2", "--digits", "9,9"],
    &["succ", "--k", "10", "--L", "2", "--j", "1", "--digits", "9,9"],
    &["add", "--k", "2", "--L", "3", "--left", "1,0,1", "--right", "0,1,1"],
    &["mul", "--k", "2", "--L", "3", "--left", "1,0,1", "--right", "0,1,1"],
    &["matrix", "--k", "2", "--L", "2", "--op", "successor-literal", "--j", "1"],
    &["matrix", "--k", "2", "--L", "2", "--op", "add", "--permutation"],
    &["matrix", "--k", "3", "--L", "1", "--op", "projector", "--m", "2"],
    &["map", "--k", "2", "--L", "2", "--g", "1,0", "--d", "0,1", "--digits", "1,0"],
    &["map", "--k", "2", "--L", "2", "--g", "1,0", "--assignment", "a1=b1,a2=b0"],
    &["hamiltonian", "--k", "2", "--L", "2", "--j", "1"],
    &["hamiltonian", "--k", "2", "--L", "2", "--j", "2", "--conjugate", "--seed", "5", "--t", "0.5"],
    &["axioms", "--k", "2", "--L", "3"],
    &["axioms", "--k", "2", "--L", "7", "--seed", "3"],
    &["resources", "--k", "2", "--L", "10", "--verify", "10", "--seed", "1"],
    &["enumerate-maps", "--k", "2", "--L", "3", "--count-only"],
    &["enumerate-maps", "--k", "2", "--L", "2"],
];

pub fn binary() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_qarith"))
}

/// Runs the real binary; returns (exit code, stdout bytes, stderr).
pub fn invoke(args: &[&str]) -> (i32, Vec<u8>, String) {
    let out = Command::new(binary()).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout, String::from_utf8_lossy(&out.stderr).into_owned())
}

pub fn schema() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).expect("schema shipped in docs/")).expect("schema parses")
}

pub fn with_json(args: &[&str]) -> Vec<String> {
    args.iter().map(|s| s.to_string()).chain(["--format".to_string(), "json".to_string()]).collect()
}
