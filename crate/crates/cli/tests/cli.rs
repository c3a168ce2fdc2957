use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(format!("{name}.cplx"))
}

fn facering(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_facering"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn passing_checks_exit_zero() {
    let t = corpus("torus7");
    for cmd in [
        "socle",
        "gorenstein",
        "symmetry",
        "lefschetz",
        "gcheck",
        "connection",
        "hvectors",
    ] {
        let o = facering(&[cmd, path(&t), "--trials", "2"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", stdout(&o));
    }
    let o = facering(&["socle", path(&t)]);
    assert!(stdout(&o).starts_with("Soc dims (0,0,6,1); predicted C(3,i)·β_(i-1): (0,0,6,1): PASS"));
}

#[test]
fn gates_exit_zero() {
    let o = facering(&["gorenstein", path(&corpus("two_spheres"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("NOT-APPLICABLE"));

    let o = facering(&["gcheck", path(&corpus("cross_polytope_3"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("HYPOTHESIS-NOT-MET"));

    let o = facering(&["connection", "--zero-omega", path(&corpus("torus7"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("HYPOTHESIS-NOT-MET"));
}

#[test]
fn mvector_probe() {
    let o = facering(&["mvector", "1,2,4"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "(1,2,4) is not an M-vector: FAIL at i=2: 2^<1> = 3 < 4\n"
    );

    let o = facering(&["mvector", "1", "3", "6", "10"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(facering(&["socle"]).status.code(), Some(2));
    assert_eq!(
        facering(&["socle", "/no/such/file.cplx"]).status.code(),
        Some(2)
    );
    assert_eq!(
        facering(&["--field", "F4", "socle", path(&corpus("torus7"))])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        facering(&["gcheck", path(&corpus("cross_polytope_2"))])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        facering(&["linkiso", "--vertex", "99", path(&corpus("torus7"))])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(facering(&["--help"]).status.code(), Some(0));
}

#[test]
fn parse_error_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cplx");
    std::fs::write(&bad, "1 2 3\n1 2 3 3\n").unwrap();
    let o = facering(&["classify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn missing_lsop_is_a_computation_failure() {
    let o = facering(&["--field", "F2", "socle", path(&corpus("torus7"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("no l.s.o.p."));
}

#[test]
fn json_is_byte_identical() {
    let t = corpus("torus7");
    for cmd in [
        "socle",
        "lefschetz",
        "linkiso",
        "hvectors",
        "classify",
        "localcoh",
    ] {
        let a = facering(&["--json", "--seed", "9", cmd, path(&t)]);
        let b = facering(&["--json", "--seed", "9", cmd, path(&t)]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert!(v.is_object());
    }
}

#[test]
fn json_report_shape() {
    let o = facering(&[
        "--json",
        "--field",
        "F2",
        "gorenstein",
        path(&corpus("rp2_6")),
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["inputs"]["field"], "F2");
    assert_eq!(v["checks"][0]["observed"], serde_json::json!([0, 0, 0, 1]));
}

#[test]
fn generate_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.cplx");
    let o = facering(&[
        "generate",
        "cross-polytope-boundary",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = facering(&["classify", "--json", out.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["f_vector"], serde_json::json!([1, 6, 12, 8]));
    assert_eq!(v["classification"]["is_homology_sphere"], true);
}

#[test]
fn batch_over_corpus() {
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus");
    let dir = tempfile::tempdir().unwrap();
    let o = facering(&[
        "batch",
        src.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--trials",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary.as_array().unwrap().len(), 11);
    let torus: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("torus7.json")).unwrap())
            .unwrap();
    assert!(torus["reports"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["verdict"] == "PASS"));
}

#[test]
fn batch_needs_files() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        facering(&["batch", dir.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}
