use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_reptile-forge"))
        .args(args)
        .env_remove("REPTILE_FORGE_PRECISION")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(bytes) = stdin {
            pipe.write_all(bytes).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

const RIGHT_TRIANGLE: &str = r#"{"dim": 2, "cos": [["-1", "sqrt(2)/2", "0"], ["sqrt(2)/2", "-1", "sqrt(2)/2"], ["0", "sqrt(2)/2", "-1"]]}"#;
const OBTUSE_FACETS: &str = r#"{"dim": 2, "cos": [["-1", "-9/10", "-9/10"], ["-9/10", "-1", "-9/10"], ["-9/10", "-9/10", "-1"]]}"#;

#[test]
fn subdivide_then_verify_from_stdin() {
    let sub = run(&["hill", "subdivide", "--dim", "3", "--m", "2"], None);
    assert_eq!(code(&sub), 0);
    let verify = run(&["hill", "verify", "-"], Some(&sub.stdout));
    assert_eq!(code(&verify), 0, "{}", String::from_utf8_lossy(&verify.stderr));
    let report: Value = serde_json::from_slice(&verify.stdout).unwrap();
    assert!(report.is_object());
}

#[test]
fn realizable_matrix_reconstructs() {
    let check = run(&["fiedler", "check", "-"], Some(RIGHT_TRIANGLE.as_bytes()));
    assert_eq!(code(&check), 0);
    let rec = run(&["fiedler", "reconstruct", "-"], Some(RIGHT_TRIANGLE.as_bytes()));
    assert_eq!(code(&rec), 0);
    let simplex: Value = serde_json::from_slice(&rec.stdout).unwrap();
    assert_eq!(simplex["vertices"].as_array().unwrap().len(), 3);
}

#[test]
fn unrealizable_matrix_exits_one() {
    assert_eq!(code(&run(&["fiedler", "check", "-"], Some(OBTUSE_FACETS.as_bytes()))), 1);
    assert_eq!(code(&run(&["fiedler", "reconstruct", "-"], Some(OBTUSE_FACETS.as_bytes()))), 1);
}

#[test]
fn malformed_input_exits_two() {
    let out = run(&["fiedler", "check", "-"], Some(b"{\"dim\": 2, \"cos\": [[\"-1\""));
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["frobnicate"], None)), 2);
    assert_eq!(code(&run(&["hill", "generate", "--cos", "1/3", "--basis", "[[1]]"], None)), 2);
    assert_eq!(code(&run(&["hill", "subdivide", "--m", "1"], None)), 2);
    assert_eq!(code(&run(&["--help"], None)), 0);
}

#[test]
fn classify_reports_angle() {
    let out = run(&["angles", "classify", "sqrt(2)/2"], None);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["angle_deg"], "45");
}

#[test]
fn export_writes_one_face_per_facet() {
    let sub = run(&["hill", "subdivide", "--dim", "3", "--m", "2"], None);
    let obj = run(&["export", "-"], Some(&sub.stdout));
    assert_eq!(code(&obj), 0);
    let text = String::from_utf8(obj.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 32);
}

#[test]
fn audit_step_round_trips_through_checker() {
    let step = run(&["audit", "step", "tripod-determinant", "--k", "3"], None);
    assert_eq!(code(&step), 0);
    let checked = run(&["audit", "check", "-"], Some(&step.stdout));
    assert_eq!(code(&checked), 0, "{}", String::from_utf8_lossy(&checked.stderr));
}
