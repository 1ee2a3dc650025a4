use std::path::PathBuf;
use std::process::{Command, Output};

use vvmf_cli::render::EnumerationDoc;
use vvmf_core::{DMatrix, MatrixFile};

fn vvmf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vvmf"))
        .args(args)
        .output()
        .expect("run vvmf")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(d: u32) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join(format!("../../fixtures/d{d}.json"))
        .display()
        .to_string()
}

#[test]
fn enumerate_six_matches_fixture() {
    let o = vvmf(&["enumerate", "--dim", "6", "--fixtures-check", &fixture(6)]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("Total number of types: 10"));
    assert!(s.contains("fixture check d=6: PASS"));
}

#[test]
fn fixture_mismatch_exits_one_with_report() {
    let o = vvmf(&["enumerate", "--dim", "6", "--no-two-weight", "--fixtures-check", &fixture(6)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("emitted, not in fixture: [3, 3]"));
}

#[test]
fn fixture_for_other_dimension_is_rejected() {
    let o = vvmf(&["enumerate", "--dim", "5", "--fixtures-check", &fixture(6)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dimension_zero_is_a_domain_error() {
    let o = vvmf(&["enumerate", "--dim", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_arguments_are_usage_errors() {
    assert_eq!(vvmf(&["enumerate", "--dim", "six"]).status.code(), Some(2));
    assert_eq!(vvmf(&["enumerate"]).status.code(), Some(2));
    assert_eq!(vvmf(&["enumerate", "--dim", "3", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(vvmf(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn markdown_layout() {
    let o = vvmf(&["enumerate", "--dim", "6", "--format", "markdown"]);
    let s = stdout(&o);
    assert!(s.starts_with("| [m_1, ..., m_6] | [m_1, ..., m_5] | [m_1, ..., m_4] | [m_1, m_2, m_3] |"));
    assert!(s.contains("[2, 2, 2]"));
}

#[test]
fn json_roundtrips_and_is_deterministic() {
    let a = stdout(&vvmf(&["enumerate", "--dim", "5", "--format", "json"]));
    let b = stdout(&vvmf(&["enumerate", "--dim", "5", "--format", "json", "--threads", "1"]));
    assert_eq!(a, b);
    let doc: EnumerationDoc = serde_json::from_str(&a).unwrap();
    assert_eq!(doc.total, doc.types.len());
    assert_eq!(vvmf_cli::render::render_json(&doc), a);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let r = &v["types"][0]["realizations"][0];
    for key in ["parity", "a", "b", "x", "y", "z", "twelve_trL", "k1", "a_vector"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn csv_output() {
    let s = stdout(&vvmf(&["enumerate", "--dim", "3", "--format", "csv"]));
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("dimension,length,mults,type,k1_min,k1_max,realizations"));
    assert!(lines.next().unwrap().starts_with("3,3,\"1,1,1\",\"0,2,4\","));
}

#[test]
fn profile_ops() {
    assert_eq!(stdout(&vvmf(&["profile-ops", "dual", "--weights", "2,4"])), "8,10\n");
    assert_eq!(stdout(&vvmf(&["profile-ops", "dual", "--weights", "-1,1"])), "11,13\n");
    assert_eq!(stdout(&vvmf(&["profile-ops", "tensor-std", "--mults", "1,1"])), "1,2,1\n");
    assert_eq!(stdout(&vvmf(&["profile-ops", "tensor-std", "--mults", "1,3,2"])), "1,4,5,2\n");
}

#[test]
fn qcheck_passes() {
    let o = vvmf(&["qcheck", "--terms", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.lines().all(|l| l.starts_with("PASS")));
    assert!(s.contains("D(E4) = -E6/3"));
}

#[test]
fn component_listing_and_detail() {
    let list = stdout(&vvmf(&["component", "--dim", "2"]));
    assert!(!list.is_empty());
    let o = vvmf(&[
        "component", "--dim", "1", "--parity", "even", "--s-mults", "1,0", "--r-mults", "1,0,0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("12 Tr L in {0}"));
    assert!(s.contains("P(T) = 1"));
    assert!(s.contains("keep a = [] weights [0] mults [1]"));
}

#[test]
fn component_dimension_mismatch() {
    let o = vvmf(&[
        "component", "--dim", "2", "--parity", "even", "--s-mults", "1,0", "--r-mults", "1,0,0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = vvmf(&["component", "--dim", "1", "--parity", "even", "--s-mults", "1,0,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dims_of_trivial_representation() {
    let o = vvmf(&[
        "dims", "--dim", "1", "--parity", "even", "--s-mults", "1,0", "--r-mults", "1,0,0",
        "--twelve-trl", "0", "--k-min", "-2", "--k-max", "14",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let dims: Vec<&str> = s.lines().collect();
    assert_eq!(
        dims,
        ["k = -2: 0", "k = 0: 1", "k = 2: 0", "k = 4: 1", "k = 6: 1", "k = 8: 1", "k = 10: 1", "k = 12: 2", "k = 14: 1"]
    );
}

#[test]
fn dims_rejects_inadmissible_trace() {
    let o = vvmf(&[
        "dims", "--dim", "1", "--parity", "even", "--s-mults", "1,0", "--r-mults", "1,0,0",
        "--twelve-trl", "5",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reduce_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("a.json");
    let output = dir.path().join("b.json");
    let transform = dir.path().join("p.json");
    let gen = vvmf(&["reduce", "--random-shape", "1,2,1,1", "--seed", "3"]);
    assert_eq!(gen.status.code(), Some(0));
    // Reduce the reduced matrix again: nothing should change.
    std::fs::write(&input, &gen.stdout).unwrap();
    let o = vvmf(&[
        "reduce",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
        "--emit-transform",
        transform.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let a: MatrixFile = serde_json::from_slice(&gen.stdout).unwrap();
    let b: MatrixFile = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(DMatrix::try_from(a).unwrap(), DMatrix::try_from(b.clone()).unwrap());
    let m = DMatrix::try_from(b).unwrap();
    assert_eq!(m.max_e6_degree().unwrap_or(0), 0);
    assert!(transform.exists());
}

#[test]
fn reduce_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.json");
    std::fs::write(&input, r#"{"mults":[1,1],"k1":0,"entries":[[[],[[0,1,"1","1"]]],[[],[]]]}"#).unwrap();
    let o = vvmf(&["reduce", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(vvmf(&["reduce"]).status.code(), Some(1));
}
