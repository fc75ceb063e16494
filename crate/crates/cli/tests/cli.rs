use std::path::{Path, PathBuf};
use std::process::Command;

use inducedmap::format::{write_json, EnsembleFile, MatrixFile};
use inducedmap_core::search::haar_unitary;
use inducedmap_core::states::SeparableEnsemble;
use inducedmap_core::{hermitian_eigen, random, ComplexMatrix};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&dyn AsRef<std::ffi::OsStr>]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_inducedmap"))
        .args(args.iter().map(|a| a.as_ref()))
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

fn matrix(v: &Value) -> ComplexMatrix {
    serde_json::from_value::<MatrixFile>(v.clone())
        .unwrap()
        .to_matrix()
        .unwrap()
}

#[test]
fn check_block_example() {
    let (code, r, _) = run(&[&"check", &fixture("block_4x2.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["condition"]["holds"], true);
    let routes = r["condition"]["route"].as_array().unwrap();
    assert!(routes.contains(&Value::from("BLOCK_PROJECTOR")));
    // Orthogonal blocks give a classical-quantum state.
    assert_eq!(r["vqd"]["status"], "VQD");
    assert_eq!(r["config"]["tol"], 1e-9);
}

#[test]
fn check_pointer_and_overlap() {
    let (code, r, _) = run(&[&"check", &fixture("pointer.json")]);
    assert_eq!(
        (code, &r["condition"]["holds"], &r["vqd"]["status"]),
        (0, &Value::from(true), &Value::from("VQD"))
    );
    let (code, r, _) = run(&[&"check", &fixture("overlapping.json")]);
    assert_eq!(code, 2);
    assert_eq!(r["condition"]["holds"], false);
    let kinds: Vec<&str> = r["condition"]["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["kind"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"SUPPORT_OVERLAP"));
}

#[test]
fn check_cancellation_is_indeterminate() {
    let plus = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
    let minus = ComplexMatrix::from_real_rows(&[&[0.5, -0.5], &[-0.5, 0.5]]).unwrap();
    let e0 = ComplexMatrix::unit(2, 0, 0);
    let e = SeparableEnsemble::from_matrices(
        2,
        2,
        [
            (0.25, plus, e0.clone()),
            (0.25, minus, e0),
            (0.5, ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 1, 1)),
        ],
    )
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cancel.json");
    write_json(&path, &EnsembleFile::from(&e)).unwrap();
    let (code, r, _) = run(&[&"check", &path]);
    assert_eq!(code, 3);
    assert_eq!(r["condition"]["indeterminate"], true);
}

#[test]
fn induce_bell_cnot() {
    let (code, r, _) = run(&[
        &"induce",
        &fixture("bell.json"),
        &fixture("cnot.json"),
        &fixture("ket0.json"),
        &"--weighting",
        &"unnormalized",
    ]);
    assert_eq!(code, 0);
    let out = matrix(&r["output"]);
    let expect = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.0]]).unwrap();
    assert!(out.max_abs_diff(&expect) <= 1e-12);
    assert_eq!(r["classification"], "NON_POSITIVE");
    assert_eq!(r["cp"]["status"], "NOT_CP_AFFINE");
    assert_eq!(r["sl_class"], "NON_SL");

    let (code, r, _) = run(&[
        &"induce",
        &fixture("bell.json"),
        &fixture("cnot.json"),
        &fixture("ket0.json"),
    ]);
    assert_eq!(code, 0);
    let expect = ComplexMatrix::from_real_rows(&[&[1.0, 0.5], &[0.5, 0.0]]).unwrap();
    assert!(matrix(&r["output"]).max_abs_diff(&expect) <= 1e-12);
    assert_eq!(r["classification"], "NON_POSITIVE");
}

#[test]
fn induce_product_identity() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = random::rng(5);
    let rho_a = random::density(2, 2, &mut rng);
    let e = SeparableEnsemble::from_matrices(2, 2, [(1.0, rho_a, random::density(2, 1, &mut rng))]).unwrap();
    let state = dir.path().join("product.json");
    write_json(&state, &EnsembleFile::from(&e)).unwrap();
    let input = dir.path().join("input.json");
    let rho_p = random::density(2, 2, &mut rng);
    write_json(&input, &MatrixFile::from(&rho_p)).unwrap();
    let out_path = dir.path().join("out.json");
    let choi_path = dir.path().join("choi.json");
    let (code, r, _) = run(&[
        &"induce",
        &state,
        &fixture("identity4.json"),
        &input,
        &"--output",
        &out_path,
        &"--choi",
        &choi_path,
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["classification"], "CP");
    assert!(matrix(&r["output"]).max_abs_diff(&rho_p) <= 1e-12);
    let written: MatrixFile = inducedmap::format::read_json(&out_path).unwrap();
    assert!(written.to_matrix().unwrap().max_abs_diff(&rho_p) <= 1e-12);
    let choi: MatrixFile = inducedmap::format::read_json(&choi_path).unwrap();
    assert_eq!((choi.rows, choi.cols), (4, 4));
}

#[test]
fn induce_block_example_haar() {
    let dir = tempfile::tempdir().unwrap();
    let u = dir.path().join("u.json");
    write_json(&u, &MatrixFile::from(haar_unitary(4, 2, 77).matrix())).unwrap();
    let input = dir.path().join("input.json");
    write_json(&input, &MatrixFile::from(&random::density(4, 4, &mut random::rng(3)))).unwrap();
    let (code, r, _) = run(&[
        &"induce",
        &fixture("block_4x2.json"),
        &u,
        &input,
        &"--budget",
        &"100",
        &"--seed",
        &"4",
    ]);
    assert_eq!(code, 0);
    let out = matrix(&r["output"]);
    assert!((out.trace().re - 1.0).abs() <= 1e-10);
    assert!(hermitian_eigen(&out, 1e-9).unwrap().min() >= -1e-10);
    assert_eq!(r["config"]["seed"], 4);
    assert_eq!(r["config"]["budget"], 100);
}

#[test]
fn dimension_and_usage_errors() {
    let (code, _, err) = run(&[&"induce", &fixture("block_4x2.json"), &fixture("cnot.json")]);
    assert_eq!(code, 65, "{err}");
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("mixed4.json");
    write_json(&big, &MatrixFile::from(&ComplexMatrix::identity(4).scale_real(0.25))).unwrap();
    let (code, _, _) = run(&[&"induce", &fixture("bell.json"), &fixture("cnot.json"), &big]);
    assert_eq!(code, 65);
    let (code, _, _) = run(&[&"check", &"/nonexistent/file.json"]);
    assert_eq!(code, 64);
    let (code, _, _) = run(&[&"check", &fixture("cnot.json")]);
    assert_eq!(code, 64);
    let (code, _, _) = run(&[&"frobnicate"]);
    assert_eq!(code, 64);
    let (code, _, _) = run(&[&"repro", &"nosuch"]);
    assert_eq!(code, 64);
    let (code, _, _) = run(&[&"check", &fixture("pointer.json"), &"--tol", &"-1"]);
    assert_eq!(code, 64);
    let (code, _, _) = run(&[&"--help"]);
    assert_eq!(code, 0);
}

#[test]
fn hunt_preconditions_and_output() {
    let (code, _, err) = run(&[&"hunt", &fixture("block_4x2.json"), &"--trials", &"5"]);
    assert_eq!(code, 2);
    assert!(err.contains("discord"));
    let (code, _, _) = run(&[&"hunt", &fixture("overlapping.json"), &"--trials", &"5"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&[&"hunt", &fixture("pointer.json"), &"--trials", &"0"]);
    assert_eq!(code, 64);
    let (code, _, _) = run(&[&"hunt", &fixture("pointer.json"), &"--family", &"generator"]);
    assert_eq!(code, 64);
}

#[test]
fn repro_fixtures() {
    let (code, r, _) = run(&[&"repro", &"bell-cnot"]);
    assert_eq!(code, 0);
    assert_eq!(r["pass"], true);
    let lam = r["data"]["output_min_eigenvalue"].as_f64().unwrap();
    assert!((lam - (1.0 - 5f64.sqrt()) / 4.0).abs() <= 1e-10);
    let (code, r, _) = run(&[&"repro", &"example-4xf", &"--p1", &"0.25"]);
    assert_eq!(code, 0);
    let r1 = matrix(&r["data"]["rescaled"][0]);
    assert!((r1[(0, 1)].re - 4.0).abs() <= 1e-12);
    let (code, _, _) = run(&[&"repro", &"example-4xf", &"--p1", &"1.5"]);
    assert_eq!(code, 64);
}

#[test]
fn discord_command() {
    let (code, r, _) = run(&[&"discord", &fixture("bell.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["vqd"]["status"], "NONZERO");
    let (code, r, _) = run(&[&"discord", &fixture("pointer.json"), &"--seed", &"3"]);
    assert_eq!(code, 0);
    assert_eq!(r["vqd"]["status"], "VQD");
    assert_eq!(r["config"]["seed"], 3);
}
