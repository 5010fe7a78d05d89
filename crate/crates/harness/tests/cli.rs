use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn dichroma(args: &[&str], dir: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dichroma")).args(args).current_dir(dir).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn gen_then_check_tight_instance() {
    let dir = tempfile::tempdir().unwrap();
    let out = dichroma(&["gen", "obstruction", "5", "2", "-o", "ob.dgf"], dir.path());
    assert!(out.status.success());
    assert_eq!(json(&out)["arcs"], 50);
    let out = dichroma(&["check", "ob.dgf", "--cap", "10"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["chi"].as_u64(), v["reed_bound"].as_u64()), (Some(5), Some(5)));

    let out = dichroma(&["check", "ob.dgf"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"].as_str().unwrap().contains("capped"));
}

#[test]
fn gen_to_stdout_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dichroma(&["gen", "complete", "3"], dir.path());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n 3\n0 1\n0 2\n1 0\n1 2\n2 0\n2 1\n");
    let out = dichroma(&["gen", "random", "12", "--seed", "4", "-o", "r.dgf"], dir.path());
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("r.dgf")).unwrap();
    let d = dichroma::parse_dgf(&text).unwrap();
    assert_eq!(dichroma::emit_dgf(&d), text);
}

#[test]
fn parse_errors_exit_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.dgf"), "n 2\n0 2\n").unwrap();
    let out = dichroma(&["params", "bad.dgf"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!((v["line"].as_u64(), v["column"].as_u64()), (Some(2), Some(3)));
}

#[test]
fn params_and_dicolor() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c3.dgf"), "n 3\n0 1\n1 2\n2 0\n").unwrap();
    let v = json(&dichroma(&["params", "c3.dgf"], dir.path()));
    assert_eq!(v["omega_dir"], 2);
    assert_eq!(v["omega_bi"], 1);
    assert_eq!(v["constants"]["delta_of_a_ceil"], 599);
    assert_eq!(v["constants"]["delta1_is_default"], true);

    let v = json(&dichroma(&["dicolor", "c3.dgf"], dir.path()));
    assert_eq!(v["chi"], 2);
    let v = json(&dichroma(&["dicolor", "c3.dgf", "--k", "1"], dir.path()));
    assert_eq!(v["colourable"], false);
    fs::write(dir.path().join("lists.json"), "[[0], [0], [0, 1]]").unwrap();
    let v = json(&dichroma(&["dicolor", "c3.dgf", "--list", "lists.json"], dir.path()));
    assert_eq!(v["colourable"], true);
    assert_eq!(v["colouring"]["colours"][2], 1);
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dichroma"))
        .args(["dicolor", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"n 2\n0 1\n1 0\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(json(&out)["chi"], 2);
}

#[test]
fn structural_commands() {
    let dir = tempfile::tempdir().unwrap();
    dichroma(&["gen", "obstruction", "6", "1", "-o", "o6.dgf"], dir.path());
    let v = json(&dichroma(&["transversal", "o6.dgf"], dir.path()));
    assert!(v["outcome"]["hitting_set"].is_array());

    // the directed 4-cycle split into its two colour classes, k = 1
    fs::write(dir.path().join("c4.dgf"), "n 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    fs::write(dir.path().join("parts.json"), "[[0, 2], [1, 3]]").unwrap();
    let v = json(&dichroma(&["asr", "c4.dgf", "--parts", "parts.json", "--k", "1", "--anchor", "2"], dir.path()));
    assert_eq!(v["found"], true);
    let set: Vec<u64> = v["outcome"]["set"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert!(set.contains(&2) && set.len() == 2);
    assert_eq!(v["outcome"]["precondition_holds"], true);
    // on ↔C4 every choice of representatives is a digon
    fs::write(dir.path().join("bc4.dgf"), "n 4\n0 1\n1 0\n1 2\n2 1\n2 3\n3 2\n3 0\n0 3\n").unwrap();
    let v = json(&dichroma(&["asr", "bc4.dgf", "--parts", "parts.json", "--k", "1"], dir.path()));
    assert_eq!(v["found"], false);
    let out = dichroma(&["gen", "complete", "4", "-o", "k4.dgf"], dir.path());
    assert!(out.status.success());
    let out = dichroma(&["asr", "k4.dgf", "--parts", "parts.json", "--k", "1"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    dichroma(&["gen", "random", "20", "--seed", "2", "-o", "r.dgf"], dir.path());
    let v = json(&dichroma(&["sparse", "r.dgf", "--B", "0", "--probe", "0", "--trials", "50"], dir.path()));
    assert_eq!(v["found"], true);
    assert_eq!(v["monte_carlo"]["trials"], 50);

    dichroma(&["gen", "complete", "5", "-o", "k5.dgf"], dir.path());
    let v = json(&dichroma(&["dense", "k5.dgf", "--a", "1/600", "--eps", "1/300"], dir.path()));
    assert_eq!(v["run"]["v"], 0);
    let out = dichroma(&["dense", "k5.dgf", "--a", "1/600", "--eps", "1/10"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hunt_reports_and_persists() {
    let dir = tempfile::tempdir().unwrap();
    let out = dichroma(
        &["hunt", "--mode", "exhaustive", "--class", "tournament", "--n-max", "5", "--records", "rec.jsonl"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["instances"], 20);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    let lines = fs::read_to_string(dir.path().join("rec.jsonl")).unwrap();
    assert_eq!(lines.lines().count(), 20);

    let out = Command::new(env!("CARGO_BIN_EXE_dichroma"))
        .args(["hunt", "--count", "0"])
        .env("DICHROMA_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(json(&out)["instances"], 0);
}

#[test]
fn violations_exit_one() {
    // ↔C5 has χ⃗ = 3 but ⌈(1−ε)·2 + ε·ω⃗⌉ = 2 once ε is close to 1
    let dir = tempfile::tempdir().unwrap();
    dichroma(&["gen", "obstruction", "5", "1", "-o", "c5.dgf"], dir.path());
    let out = dichroma(&["check", "c5.dgf", "--bound", "delmin", "--eps", "99/100"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["delmin"]["holds_directed"], false);
    assert!(v["digraph"]["arcs"].is_array());
    let out = dichroma(&["check", "c5.dgf", "--bound", "reed", "--eps", "99/100"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let out = dichroma(&["check", "c5.dgf", "--eps", "0"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}
