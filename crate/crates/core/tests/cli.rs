use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn fhp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fhp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn counterexample_is_stable_at_seven() {
    let o = fhp(&["classify", &data("counterexample.json"), "--sigma", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status: stable\n"));
}

#[test]
fn ex1_instances() {
    let o = fhp(&["classify", &data("ex1_diagonal.json")]);
    let text = stdout(&o);
    assert!(text.contains("status: stable\n"));
    assert!(text.contains("(default; pass --sigma to choose)"));
    let o = fhp(&["--format", "json", "classify", &data("ex1_scalar.json"), "--oracle"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "unstable");
    let w = &v["witnesses"][0];
    assert_eq!(w["inequality"], "kernel_psi");
    assert_eq!(w["in_kernel"], true);
    assert_eq!(w["recheck"], "greater");
    assert_eq!(v["oracle"]["agrees"], true);
}

#[test]
fn oriented_report() {
    let text = stdout(&fhp(&["classify", &data("oriented_split.json")]));
    assert!(text.contains("oriented stable: split_polystable"), "{text}");
}

#[test]
fn flip_diagram_matches_golden_file() {
    let golden = include_str!("golden/walls_d0_r2_c3.dot");
    for _ in 0..2 {
        let o = fhp(&["walls", "--d", "0", "--r", "2", "--h", "10", "--c", "3", "--dot"]);
        assert_eq!(stdout(&o), golden);
    }
    let text = stdout(&fhp(&["walls", "--d", "0", "--r", "2", "--h", "10", "--c", "3"]));
    assert!(text.contains("sigma_infinity: 6\nwalls: {2, 4, 6}\nchambers: 4\n"), "{text}");
}

#[test]
fn rank_one_has_a_single_node() {
    let dot = stdout(&fhp(&["walls", "--d", "3", "--r", "1", "--h", "5", "--c", "3", "--dot"]));
    assert!(dot.starts_with("digraph flips {") && dot.trim_end().ends_with('}'));
    assert_eq!(dot.matches("[label=").count(), 1);
    assert!(!dot.contains("->"));
}

#[test]
fn matgit_reports() {
    let text = stdout(&fhp(&["matgit", &data("shift_pair.json")]));
    assert!(text.contains("git status: stable"));
    assert!(text.contains("(tr A, det A, tr B, det B, tr AB): (0, 0, 0, 0, 1)"));
    let o = fhp(&["--format", "json", "matgit", &data("zero_pair.json")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["git_status"], "nullform");
    assert!(v["char_vector"].as_array().unwrap().iter().all(|e| e[1] == "0"));
}

#[test]
fn conjugate_matrix_files_give_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    // B' = g B g⁻¹ and A' = g A g⁻¹ with g = [[1, 1], [0, 1]].
    std::fs::write(&a, r#"{"matrices": [[["1", "2"], ["0", "3"]], [["0", "1"], ["1", "1"]]]}"#).unwrap();
    std::fs::write(&b, r#"{"matrices": [[["1", "4"], ["0", "3"]], [["1", "1"], ["1", "0"]]]}"#).unwrap();
    let ra = stdout(&fhp(&["matgit", a.to_str().unwrap()]));
    let rb = stdout(&fhp(&["matgit", b.to_str().unwrap()]));
    assert_eq!(ra, rb);
}

#[test]
fn casebook_counterexample_passes() {
    let text = stdout(&fhp(&["casebook", "counterexample"]));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 4, "{text}");
}

#[test]
fn casebook_obs_for_one_type() {
    let text = stdout(&fhp(&["casebook", "obs", "--d", "0", "--m0", "1"]));
    assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(fhp(&["classify", "/nonexistent.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, std::fs::read_to_string(data("counterexample.json")).unwrap().replace("\"1\"", "1")).unwrap();
    let o = fhp(&["classify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"), "diagnostic names the position");
    assert_eq!(fhp(&["classify", &data("counterexample.json"), "--sigma", "0.5"]).status.code(), Some(2));
    assert_eq!(fhp(&["classify", &data("rank3.json")]).status.code(), Some(0));
    let o = fhp(&["--strict", "classify", &data("rank3.json")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("WARNING"));
}

#[test]
fn reports_are_deterministic_and_can_go_to_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let args = ["--format", "json", "--out-dir", out.to_str().unwrap(), "walls", &data("twisted.json")];
    assert_eq!(fhp(&args).status.code(), Some(0));
    let first = std::fs::read_to_string(out.join("walls.json")).unwrap();
    assert!(out.join("flips.dot").exists());
    assert_eq!(fhp(&args).status.code(), Some(0));
    assert_eq!(first, std::fs::read_to_string(out.join("walls.json")).unwrap());
}
