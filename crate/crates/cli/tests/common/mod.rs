#![allow(dead_code)]

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

pub fn lexrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexrank"))
        .args(args)
        .env_remove("LEXRANK_CACHE")
        .output()
        .expect("failed to launch lexrank")
}

pub fn lexrank_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lexrank"))
        .args(args)
        .env_remove("LEXRANK_CACHE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("failed to launch lexrank");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

pub fn json_stdout(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

pub fn json_stderr(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr)
        .unwrap_or_else(|e| panic!("stderr is not JSON ({e}): {}", String::from_utf8_lossy(&out.stderr)))
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}
