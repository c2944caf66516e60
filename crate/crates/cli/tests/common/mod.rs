#![allow(dead_code)]

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
    pub elapsed: Duration,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", self.stdout))
    }
}

pub fn sha_scope(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_sha-scope")).args(args).output().expect("spawn sha-scope");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap_or(-1),
        elapsed: start.elapsed(),
    }
}

pub const PRODUCT_CURVE_LONG: &str = "0,1692602,0,-530052723915,0";
pub const CURVE_2_23_LONG: &str = "1,-1,0,-332311,-73733731";
pub const CURVE_2_23_MIN: &str = "-5316979,-4724275762";
