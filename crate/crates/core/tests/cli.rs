//! Runs the compiled binary end to end.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn entwine(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_entwine"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("entwine-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn show_matches_golden() {
    let o = entwine(&["examples", "show", "ex28.W", "--params", "r=1,t=1,p=s"], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o), include_str!("golden/ex28_W.txt"));
}

#[test]
fn list_names_every_example() {
    let o = entwine(&["examples", "list"], "");
    assert!(o.status.success());
    let out = stdout(&o);
    for name in ["ex27.truncated", "ex28.W", "ex28.X56", "ex28.X59", "ex28.Z", "flip", "dk.group"] {
        assert!(out.lines().any(|l| l.starts_with(name)), "{name} missing");
    }
}

#[test]
fn export_and_reimport() {
    let path = scratch("entwining.json");
    let o = entwine(&["export-matrix", "--example", "ex28.entwining", "-o", path.to_str().unwrap()], "");
    assert!(o.status.success());
    let first = std::fs::read_to_string(&path).unwrap();
    let o = entwine(&["check-entwining", "--file", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("PASS\n"));
    // exporting the file again is a fixed point
    let again = entwine(&["export-matrix", "--file", path.to_str().unwrap()], "");
    assert_eq!(stdout(&again), first);
}

#[test]
fn stdin_pipeline() {
    let built = entwine(&["build-wxz", "--example", "ex27.truncated", "--params", "N=2"], "");
    assert!(built.status.success());
    let o = entwine(&["check-wxz", "--file", "-"], &stdout(&built));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let glued = entwine(&["glue"], &stdout(&built));
    assert_eq!(glued.status.code(), Some(0), "{}", stdout(&glued));
}

#[test]
fn hecke_commands() {
    let path = scratch("hecke.json");
    let o = entwine(&["hecke-glue", "--example", "ex28.entwining", "-o", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = entwine(&["check-hecke", "--file", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // the relation pins q: another value fails
    let o = entwine(&["check-hecke", "--file", path.to_str().unwrap(), "--params", "q=2"], "");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_report_is_machine_readable() {
    let o = entwine(&["check-entwining", "--example", "flip", "--json"], "");
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(entwine(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(entwine(&["check-algebra", "--file", "/no/such/file.json"], "").status.code(), Some(2));
    assert_eq!(entwine(&["check-algebra"], "not json").status.code(), Some(2));
    assert_eq!(entwine(&["examples", "show", "nope"], "").status.code(), Some(2));
    assert_eq!(entwine(&["examples", "show", "ex28.X59", "--params", "s=0"], "").status.code(), Some(2));
    let o = entwine(&["check-algebra", "--example", "ex28.algebra"], "");
    assert_eq!(o.status.code(), Some(0));
    let o = entwine(&["check-wxz", "--example", "ex28.wxz", "--params", "r=1,t=1,p=s"], "");
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let err = entwine(&["check-wxz", "--example", "nope"], "");
    assert!(String::from_utf8(err.stderr).unwrap().starts_with("error:"));
}
