use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sphereq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const GL2: &str = r#"{"group":{"family":"gl2p","p":101},"constants":[
    {"rows":[[1,2],[3,4]]},{"rows":[[5,6],[7,9]]},{"rows":[[2,0],[1,3]]},{"rows":[[46,2],[60,60]]}]}"#;

#[test]
fn solve_then_verify() {
    let out = run(&["--seed", "5", "solve", GL2], None);
    let r = report(&out);
    assert_eq!(r["verified"], json!(true));
    let checked = report(&run(&["verify", GL2, &r.to_string()], None));
    assert_eq!(checked, json!({"verified": true}));
}

#[test]
fn seeded_output_is_byte_identical() {
    let a = run(&["--seed", "9", "solve", GL2], None);
    let b = run(&["--seed", "9", "solve", GL2], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.ends_with(b"\n"));
}

#[test]
fn reads_stdin() {
    let eq = r#"{"group":{"family":"symmetric","n":3},"constants":[{"images":[2,1,3]},{"images":[2,1,3]}]}"#;
    let r = report(&run(&["decide"], Some(eq)));
    assert_eq!(r, json!({"method": "cayley-dp", "solvable": true}));
}

#[test]
fn reduction_pipeline() {
    let eq = report(&run(&["reduce", "--from", "partition", r#"{"a":[3,1,2]}"#], None));
    let r = report(&run(&["solve", &eq.to_string()], None));
    assert_eq!(r["solvable"], json!(true));
    assert_eq!(r["method"], json!("dihedral-criteria"));
}

#[test]
fn forced_oracle() {
    let eq = r#"{"group":{"family":"dihedral","n":4},"constants":[{"k":1,"delta":1}]}"#;
    let r = report(&run(&["decide", "--force-oracle", eq], None));
    assert_eq!(r, json!({"method": "brute", "solvable": false}));
}

#[test]
fn saturation_of_small_groups() {
    let r = report(&run(&["saturation", r#"{"family":"symmetric","n":3}"#], None));
    assert_eq!(r, json!({"saturation_length": "none"}));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["decide", "{not json"], None).status.code(), Some(2));
    let images: Vec<usize> = [2, 1].into_iter().chain(3..=40).collect();
    let big = json!({"group": {"family": "symmetric", "n": 40}, "constants": [{"images": images}]}).to_string();
    assert_eq!(run(&["solve", &big], None).status.code(), Some(3));
    let bad = r#"{"group":{"family":"gl2p","p":6},"constants":[]}"#;
    assert_eq!(run(&["decide", bad], None).status.code(), Some(2));
}

#[test]
fn writes_to_file() {
    let dir = std::env::temp_dir().join(format!("sphereq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = run(&["--out", path.to_str().unwrap(), "classify", r#"{"rows":[[1,1],[0,1]],"p":5}"#], None);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["type"], json!("type3"));
    std::fs::remove_dir_all(dir).unwrap();
}
