// Shared by several test binaries; not every binary uses every helper.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

/// Runs the installed binary with `args`, capturing everything.
pub fn evroute(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evroute"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn data(name: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.push("tests/data");
    path.push(name);
    path.to_str().expect("utf-8 path").to_string()
}

pub fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

pub fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

pub fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}
