//! End-to-end tests of the binary: exit codes, report content, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use superkit::algebra::direct_sum;
use superkit::catalog;
use superkit::document::{algebra_to_json, map_to_json};
use superkit::{FieldSpec, LinearMap};

const Q: FieldSpec = FieldSpec::Rationals;

fn superkit_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_superkit"))
}

fn run(args: &[&str]) -> Output {
    superkit_bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

fn write_builtin(dir: &Path, spec: &str, file: &str) -> PathBuf {
    let path = dir.join(file);
    let l = catalog::builtin(spec).unwrap();
    std::fs::write(&path, algebra_to_json(&l)).unwrap();
    path
}

#[test]
fn builtin_then_validate_all_catalog_entries() {
    let dir = tempfile::tempdir().unwrap();
    for (i, spec) in catalog::builtin_names().iter().enumerate() {
        let path = dir.path().join(format!("alg{i}.json"));
        let out = run(&["builtin", spec, "-o", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{spec}: {out:?}");
        let out = run(&["validate", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{spec}");
        assert!(stdout(&out).contains("verdict valid: true"));
    }
}

#[test]
fn builtin_rejects_bad_specs() {
    assert_eq!(run(&["builtin", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["builtin", "sl2(f2)"]).status.code(), Some(2));
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad_json = dir.path().join("broken.json");
    std::fs::write(&bad_json, "{ not json").unwrap();
    assert_eq!(run(&["validate", bad_json.to_str().unwrap()]).status.code(), Some(2));

    let skew = dir.path().join("skew.json");
    std::fs::write(
        &skew,
        r#"{"format":"superkit-algebra/1","name":"bad","field":{"kind":"Q"},
            "even":["a","b","c"],"odd":[],
            "brackets":{"a,b":{"c":"1"},"b,a":{"c":"1"}}}"#,
    )
    .unwrap();
    assert_eq!(run(&["validate", skew.to_str().unwrap()]).status.code(), Some(2));

    // jacobi failure is a mathematical failure, not a parse failure
    let nonjacobi = dir.path().join("nonjacobi.json");
    std::fs::write(
        &nonjacobi,
        r#"{"format":"superkit-algebra/1","name":"bad","field":{"kind":"Q"},
            "even":["a","b","c"],"odd":[],
            "brackets":{"a,b":{"c":"1"},"a,c":{"a":"1"}}}"#,
    )
    .unwrap();
    let out = run(&["validate", nonjacobi.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("check jacobi_identity: fail"));
    assert!(stdout(&out).contains("(a,"), "witness triple present");
}

#[test]
fn theorem1_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let osp = write_builtin(dir.path(), "osp12(q)", "osp.json");
    let out = run(&["theorem1", osp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("verdict theorem1: holds"));

    let gl = write_builtin(dir.path(), "gl11(q)", "gl.json");
    let out = run(&["theorem1", gl.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("check hypothesis_centerless: fail"));

    let char2 = write_builtin(dir.path(), "char2_nonabelian", "c2.json");
    let out = run(&["theorem1", char2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("check hypothesis_has_half: fail"));
    assert!(stdout(&out).contains("TDer(L) = Der(L) fails"), "diagnostic evaluation shown");
}

#[test]
fn analyze_reports_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let sl2 = catalog::sl2(Q).unwrap();
    let sum = direct_sum(&sl2, &sl2).unwrap().algebra;
    let path = dir.path().join("sum.json");
    std::fs::write(&path, algebra_to_json(&sum)).unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("2 indecomposable ideal(s) of dims [3, 3]"), "{text}");
    assert!(text.contains("verdict perfect: true"));

    let ab = write_builtin(dir.path(), "abelian(2|1)", "ab.json");
    let out = run(&["analyze", ab.to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.contains("verdict perfect: false"));
    assert!(text.contains("center_dim = 3"));
    assert!(text.contains("not_applicable (center is nonzero)"));
}

#[test]
fn der_dimensions_and_triple_flag() {
    let dir = tempfile::tempdir().unwrap();
    let ab = write_builtin(dir.path(), "abelian(2|0)", "ab20.json");
    let out = run(&["der", ab.to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.contains("der_even = 4"), "{text}");
    assert!(text.contains("der_odd = 0"));

    let c2 = write_builtin(dir.path(), "char2_nonabelian", "c2.json");
    let out = run(&["der", c2.to_str().unwrap(), "--triple"]);
    let text = stdout(&out);
    assert!(text.contains("tder_even = 3"), "{text}");
    assert!(text.contains("inner_even = 2"));
}

#[test]
fn hom_classifies_and_decomposes() {
    let dir = tempfile::tempdir().unwrap();
    let osp = catalog::osp12(Q).unwrap();
    let osp_path = write_builtin(dir.path(), "osp12(q)", "osp.json");

    let neg = LinearMap::identity(osp.dims(), Q).scaled(&Q.integer(-1));
    let neg_path = dir.path().join("neg.json");
    std::fs::write(&neg_path, map_to_json(&neg, &osp, &osp)).unwrap();
    let out = run(&[
        "hom",
        neg_path.to_str().unwrap(),
        "--domain",
        osp_path.to_str().unwrap(),
        "--codomain",
        osp_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("verdict classification: anti-homomorphism"));

    // a non-example: projection of sl2 onto span{h}
    let sl2 = catalog::sl2(Q).unwrap();
    let sl2_path = write_builtin(dir.path(), "sl2(q)", "sl2.json");
    let mut proj = superkit::Matrix::zero(3, 3, Q);
    proj.set(0, 0, Q.one());
    let proj = LinearMap::new(sl2.dims(), sl2.dims(), superkit::Parity::Even, proj).unwrap();
    let proj_path = dir.path().join("proj.json");
    std::fs::write(&proj_path, map_to_json(&proj, &sl2, &sl2)).unwrap();
    let out = run(&[
        "hom",
        proj_path.to_str().unwrap(),
        "--domain",
        sl2_path.to_str().unwrap(),
        "--codomain",
        sl2_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("check is_triple_homomorphism: fail"));
    assert!(stdout(&out).contains("violated at ("));

    // x ↦ (x, −x) decomposes as a direct sum
    let sum = direct_sum(&sl2, &sl2).unwrap();
    let sum_path = dir.path().join("sum.json");
    std::fs::write(&sum_path, algebra_to_json(&sum.algebra)).unwrap();
    let twisted = sum
        .embed_left
        .add(&sum.embed_right.scaled(&Q.integer(-1)))
        .unwrap();
    let map_path = dir.path().join("twisted.json");
    std::fs::write(&map_path, map_to_json(&twisted, &sl2, &sum.algebra)).unwrap();
    let out = run(&[
        "hom",
        map_path.to_str().unwrap(),
        "--domain",
        sl2_path.to_str().unwrap(),
        "--codomain",
        sum_path.to_str().unwrap(),
        "--decompose",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("verdict verdict: direct-sum"), "{text}");
    assert!(text.contains("check projection_route_agrees: pass"));
    assert!(text.contains("m_minus_dim = 3"));
    assert!(!text.contains(": fail"));
}

#[test]
fn json_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let osp = write_builtin(dir.path(), "osp12(q)", "osp.json");
    let first = run(&["theorem1", osp.to_str().unwrap(), "--json"]);
    let second = run(&["theorem1", osp.to_str().unwrap(), "--json"]);
    assert_eq!(first.stdout, second.stdout);
    let parsed: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(parsed["command"], "theorem1");
    assert_eq!(parsed["verdicts"]["theorem1"], "holds");
}

#[test]
fn dimension_cap_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let sl2 = write_builtin(dir.path(), "sl2(q)", "sl2.json");
    let out = superkit_bin()
        .args(["validate", sl2.to_str().unwrap()])
        .env("SUPERKIT_MAX_DIM", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("SUPERKIT_MAX_DIM"), "{err}");
}

#[test]
fn field_override_rules() {
    let dir = tempfile::tempdir().unwrap();
    let sl2 = write_builtin(dir.path(), "sl2(q)", "sl2.json");
    let out = run(&["validate", sl2.to_str().unwrap(), "--field-override", "f5"]);
    assert_eq!(out.status.code(), Some(0), "integer tables reduce mod 5");

    let c2 = write_builtin(dir.path(), "char2_nonabelian", "c2.json");
    let out = run(&["validate", c2.to_str().unwrap(), "--field-override", "q"]);
    assert_eq!(out.status.code(), Some(2), "lifting residues is refused");
}
