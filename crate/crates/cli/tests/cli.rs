use std::process::{Command, Output};

use serde_json::Value;

fn gkm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gkm")).args(args).output().expect("run gkm")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn coeff() {
    let o = gkm(&["coeff", "1", "0", "1", "0", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("2/5*sqrt(5) ≈ 0.894427"), "{}", stdout(&o));
    assert!(stdout(&gkm(&["coeff", "0", "0", "3", "1", "3"])).starts_with("1 ≈"));
    assert!(stdout(&gkm(&["coeff", "1", "0", "1", "0", "1"])).starts_with("0 ≈"));
    assert!(stdout(&gkm(&["coeff", "2", "-1", "1", "1", "1"])).contains('≈'));
    assert_eq!(code(&gkm(&["coeff", "1", "2", "1", "0", "1"])), 2);
    let j: Value =
        serde_json::from_str(&stdout(&gkm(&["coeff", "1", "0", "1", "0", "2", "--format", "json"]))).unwrap();
    assert_eq!(j["exact"], "2/5*sqrt(5)");
}

#[test]
fn bracket() {
    let o = gkm(&["bracket", "--manifold", "torus", "T:a=1,m=1,n=0", "T:a=2,m=-1,n=0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "i*sqrt(2)*T:a=3,m=0,n=0");
    let o = gkm(&["bracket", "--manifold", "sphere", "d", "T:a=1,l=5,m=-3"]);
    assert_eq!(stdout(&o).trim(), "-3*T:a=1,l=5,m=-3");
    let o = gkm(&["bracket", "--manifold", "sphere", "L:l=0,m=0", "L:l=2,m=1"]);
    assert_eq!(stdout(&o).trim(), "-L:l=2,m=1");
    // manifold inferred from the operands
    let o = gkm(&["bracket", "T:a=1,m=2", "T:a=1,m=-2"]);
    assert_eq!(stdout(&o).trim(), "2*k");
    let o = gkm(&["bracket", "--format", "json", "T:a=1,m=2,n=1", "T:a=2,m=0,n=0"]);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j[0]["gen"], "T:a=3,m=2,n=1");
}

#[test]
fn bracket_errors() {
    assert_eq!(code(&gkm(&["bracket", "T:a=1,m=1,n=0", "T:q=1"])), 2);
    assert_eq!(code(&gkm(&["bracket", "--manifold", "torus", "T:a=1,m=1,n=0", "T:a=1,l=1,m=0"])), 3);
    assert_eq!(code(&gkm(&["bracket", "--manifold", "sphere", "d", "L:l=2,m=1"])), 3);
    assert_eq!(code(&gkm(&["bracket", "d", "k"])), 2);
    assert_eq!(code(&gkm(&["bracket", "--algebra", "so5", "d", "k"])), 2);
    // su2 has three generators
    assert_eq!(code(&gkm(&["bracket", "--manifold", "torus", "T:a=4,m=0,n=0", "d1"])), 2);
}

#[test]
fn verify_suites() {
    let o = gkm(&["verify", "jacobi", "--manifold", "sphere", "--lmax", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("triples checked, 0 failures"), "{}", stdout(&o));
    for args in [
        &["verify", "oracle", "--lmax", "6", "--tol", "1e-9"][..],
        &["verify", "serre", "--algebra", "su3", "--cutoff", "2"],
        &["verify", "affine", "--cutoff", "3"],
        &["verify", "orth", "--lmax", "12"],
        &["verify", "cocycle", "--manifold", "torus", "--cutoff", "1"],
        &["verify", "grading", "--manifold", "sphere", "--virasoro", "--lmax", "2"],
    ] {
        let o = gkm(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
    }
    // a tolerance no quadrature reaches
    assert_eq!(code(&gkm(&["verify", "oracle", "--lmax", "3", "--tol", "0"])), 1);
    assert_eq!(code(&gkm(&["verify", "bogus"])), 2);
}

#[test]
fn verify_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = gkm(&["verify", "jacobi", "--manifold", "circle", "--cutoff", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let j: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(j["suite"], "jacobi");
    assert_eq!(j["failures"], Value::Array(vec![]));
    assert!(j["checked"].as_u64().unwrap() > 0);
}

#[test]
fn table_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (k, workers) in ["1", "1", "2", "4"].iter().enumerate() {
        let path = dir.path().join(format!("t{k}.json"));
        let o = gkm(&[
            "table",
            "--manifold",
            "torus",
            "--cutoff",
            "2",
            "--workers",
            workers,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    let j: Value = serde_json::from_slice(&outputs[0]).unwrap();
    assert_eq!(j["family"], "torus");
}

#[test]
fn sphere_table_central_entries() {
    let o = gkm(&["table", "--manifold", "sphere", "--lmax", "4"]);
    assert_eq!(code(&o), 0);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut centrals = 0;
    for e in j["entries"].as_array().unwrap() {
        if !e["result"].as_array().unwrap().iter().any(|t| t["gen"] == "k") {
            continue;
        }
        centrals += 1;
        let (x, y): (gkm_core::GenId, gkm_core::GenId) =
            (e["lhs"].as_str().unwrap().parse().unwrap(), e["rhs"].as_str().unwrap().parse().unwrap());
        match (x, y) {
            (gkm_core::GenId::Sphere { l: l1, m: m1, .. }, gkm_core::GenId::Sphere { l: l2, m: m2, .. }) => {
                assert_eq!(l1, l2);
                assert_eq!(m1 + m2, 0);
            }
            other => panic!("central term from {other:?}"),
        }
    }
    assert!(centrals > 0);
}

#[test]
fn oracle_diff_csv() {
    let o = gkm(&["oracle-diff", "--lmax", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("l1,m1,l2,m2,l3,exact,oracle,abs_diff"));
    for line in lines {
        let diff: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(diff < 1e-12, "{line}");
    }
}

#[test]
fn serre_check_json() {
    let o = gkm(&["serre-check", "--algebra", "su3", "--cutoff", "1"]);
    assert_eq!(code(&o), 0);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let records = j.as_array().unwrap();
    // two ordered node pairs, two signs, 9² modes for the ad factors and 9 for the target
    assert_eq!(records.len(), 4 * 729);
    assert!(records.iter().all(|r| r["residual"] == "0"));
    let o = gkm(&["serre-check", "--algebra", "su2", "--presentation", "caff", "--cutoff", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&gkm(&["serre-check", "--presentation", "xyz"])), 2);
}

#[test]
fn base_dump() {
    let o = gkm(&["table", "--base", "--algebra", "su3"]);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["cartan_matrix"], serde_json::json!([[2, -1], [-1, 2]]));
    assert_eq!(j["dim"], 8);
}
