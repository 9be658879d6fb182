use std::path::{Path, PathBuf};
use std::process::Command;

use lyaploc::{matrix_to_string, parse_matrix, MatrixFile, F64};
use lyaploc_core::{certify, contains, Complex, ComplexMatrix, Region};
use proptest::prelude::*;
use serde_json::Value;

fn golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(args: &[String]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lyaploc")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    // clap usage errors print nothing on stdout
    let report = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (code, report, stderr)
}

fn expand(args: &Value) -> Vec<String> {
    args.as_array()
        .unwrap()
        .iter()
        .map(|a| {
            let a = a.as_str().unwrap();
            match a.strip_prefix('@') {
                Some(file) => golden().join(file).display().to_string(),
                None => a.to_string(),
            }
        })
        .collect()
}

#[test]
fn golden_cases() {
    let cases: Value = serde_json::from_str(&std::fs::read_to_string(golden().join("cases.json")).unwrap()).unwrap();
    let mut failures = Vec::new();
    for case in cases.as_array().unwrap() {
        let name = case["name"].as_str().unwrap();
        let (code, report, stderr) = run(&expand(&case["args"]));
        let want = case["exit"].as_i64().unwrap() as i32;
        if code != want {
            failures.push(format!("{name}: exit {code}, expected {want}; {stderr}"));
            continue;
        }
        if report != Value::Null {
            assert_eq!(report["exit_code"].as_i64(), Some(code as i64), "{name}");
        }
        if code >= 2 && report != Value::Null {
            assert!(report.pointer("/error/message").is_some(), "{name}: no error message");
            assert!(stderr.starts_with("lyaploc: "), "{name}: {stderr}");
        }
        if let Some(equals) = case.get("equals").and_then(Value::as_object) {
            for (ptr, v) in equals {
                if report.pointer(ptr) != Some(v) {
                    failures.push(format!("{name}: {ptr} = {:?}, expected {v}", report.pointer(ptr)));
                }
            }
        }
        if let Some(approx) = case.get("approx").and_then(Value::as_object) {
            for (ptr, expected) in approx {
                let want = expected[0].as_f64().unwrap();
                let tol = expected[1].as_f64().unwrap();
                match report.pointer(ptr).and_then(Value::as_f64) {
                    Some(got) if (got - want).abs() <= tol => {}
                    got => failures.push(format!("{name}: {ptr} = {got:?}, expected {want} +- {tol}")),
                }
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_exit_code_but_no_convergence_is_reachable() {
    // QR iteration has not been driven past its sweep limit by any finite input found so far
    let cases: Value = serde_json::from_str(&std::fs::read_to_string(golden().join("cases.json")).unwrap()).unwrap();
    let mut seen: Vec<i64> = cases.as_array().unwrap().iter().map(|c| c["exit"].as_i64().unwrap()).collect();
    seen.sort_unstable();
    seen.dedup();
    assert_eq!(seen, vec![0, 1, 2, 4, 5, 6, 7]);
}

#[test]
fn solve_writes_h_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.json");
    let g = golden();
    let args: Vec<String> = vec![
        "solve".into(),
        g.join("hurwitz.json").display().to_string(),
        g.join("identity2.json").display().to_string(),
        "--region".into(),
        "halfplane".into(),
        "--out".into(),
        out.display().to_string(),
    ];
    let (code, report, _) = run(&args);
    assert_eq!(code, 0);
    let written = parse_matrix(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let reported: MatrixFile = serde_json::from_value(report["h"].clone()).unwrap();
    assert_eq!(written, reported.to_matrix().unwrap());
    // HA + A*H = -I
    let a = parse_matrix(&std::fs::read_to_string(g.join("hurwitz.json")).unwrap()).unwrap();
    let lhs = &(&written * &a) + &(&a.adjoint() * &written);
    assert!((&lhs + &ComplexMatrix::identity(2)).max_abs() < 1e-13);
}

#[test]
fn help_and_unknown_subcommand() {
    let (code, _, _) = run(&["--help".into()]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["frobnicate".into()]);
    assert_eq!(code, 2);
}

fn region_args(region: &Region) -> Vec<String> {
    let mut v = vec!["--region".to_string()];
    match *region {
        Region::HalfPlaneLeft => v.push("halfplane".into()),
        Region::UnitDisk => v.push("disk".into()),
        Region::EllipseInterior { a, b } | Region::EllipseExterior { a, b } => {
            v.push(if matches!(region, Region::EllipseInterior { .. }) { "ellipse-in" } else { "ellipse-out" }.into());
            v.extend(["--a".into(), a.to_string(), "--b".into(), b.to_string()]);
        }
        Region::ParabolaInterior { p } | Region::ParabolaExterior { p } => {
            v.push(
                if matches!(region, Region::ParabolaInterior { .. }) { "parabola-in" } else { "parabola-out" }.into(),
            );
            v.extend(["--p".into(), p.to_string()]);
        }
    }
    v
}

fn certify_file(dir: &Path, a: &ComplexMatrix, region: &Region) -> (i32, Value) {
    let path = dir.join("a.json");
    std::fs::write(&path, matrix_to_string(a)).unwrap();
    let mut args = vec!["certify".to_string(), path.display().to_string()];
    args.extend(region_args(region));
    args.push("--oracle".into());
    let (code, report, _) = run(&args);
    (code, report)
}

fn triangular(diag: &[Complex], upper: &[(f64, f64)]) -> ComplexMatrix {
    let n = diag.len();
    let mut m = ComplexMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        m[(i, i)] = diag[i];
        for j in i + 1..n {
            m[(i, j)] = Complex::new(upper[k].0, upper[k].1);
            k += 1;
        }
    }
    m
}

fn regions_with_iff() -> [Region; 4] {
    [
        Region::HalfPlaneLeft,
        Region::UnitDisk,
        Region::EllipseInterior { a: 2.0, b: 1.0 },
        Region::ParabolaInterior { p: 1.0 },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn report_floats_round_trip(bits in any::<u64>()) {
        let x = f64::from_bits(bits);
        prop_assume!(x.is_finite());
        let text = serde_json::to_string(&F64(x)).unwrap();
        let back: f64 = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_bits(), x.to_bits(), "{} -> {}", x, text);
    }

    #[test]
    fn matrix_files_round_trip(entries in proptest::collection::vec(any::<(f64, f64)>(), 6)) {
        prop_assume!(entries.iter().all(|(re, im)| re.is_finite() && im.is_finite()));
        let m = ComplexMatrix::new(2, 3, entries.iter().map(|&(re, im)| Complex::new(re, im)).collect()).unwrap();
        let back = parse_matrix(&matrix_to_string(&m)).unwrap();
        for (x, y) in m.as_slice().iter().zip(back.as_slice()) {
            prop_assert_eq!(x.re.to_bits(), y.re.to_bits());
            prop_assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reported_certificate_is_bit_identical(
        diag in proptest::collection::vec((-1.5f64..-0.1, -2.0f64..2.0), 3),
        upper in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 3),
    ) {
        let d: Vec<Complex> = diag.iter().map(|&(re, im)| Complex::new(re, im)).collect();
        let a = triangular(&d, &upper);
        let dir = tempfile::tempdir().unwrap();
        let (code, report) = certify_file(dir.path(), &a, &Region::HalfPlaneLeft);
        prop_assert_eq!(code, 0);
        let reported: MatrixFile = serde_json::from_value(report["h"].clone()).unwrap();
        // the binary reads the same bits back from the file
        let expected = certify(&Region::HalfPlaneLeft, &parse_matrix(&matrix_to_string(&a)).unwrap(), None).unwrap();
        prop_assert_eq!(reported, MatrixFile::from_matrix(&expected.h));
    }

    #[test]
    fn verdict_agrees_with_eigenvalue_oracle(
        which in 0usize..4,
        diag in proptest::collection::vec((-2.5f64..2.5, -2.5f64..2.5), 3),
        upper in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 3),
    ) {
        let region = regions_with_iff()[which];
        let d: Vec<Complex> = diag.iter().map(|&(re, im)| Complex::new(re, im)).collect();
        let a = triangular(&d, &upper);
        let dir = tempfile::tempdir().unwrap();
        let (code, report) = certify_file(dir.path(), &a, &region);
        // eigenvalues on the boundary make the system singular
        prop_assume!(code != 4);
        prop_assert_eq!(report["oracle"]["inside"].as_bool(), Some(d.iter().all(|&z| contains(&region, z))));
        prop_assert_eq!(report["oracle"]["agrees"].as_bool(), Some(true), "{}", report);
        prop_assert_eq!(code, if report["verdict"] == Value::Bool(true) { 0 } else { 1 });
    }
}

#[test]
fn parabola_exterior_never_contradicts_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let region = Region::ParabolaExterior { p: 1.0 };
    for diag in [[-1.0, -3.0], [2.0, -0.5], [0.5, 4.0]] {
        let d: Vec<Complex> = diag.iter().map(|&x| Complex::new(x, 0.5 * x)).collect();
        let a = triangular(&d, &[(3.0, -1.0)]);
        let (_, report) = certify_file(dir.path(), &a, &region);
        assert_eq!(report["direction"], "sufficient_only");
        assert_eq!(report["oracle"]["agrees"], true, "{report}");
    }
}

#[test]
fn ellipse_exterior_oracle_disagreement_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let region = Region::EllipseExterior { a: 2.0, b: 1.0 };
    let a = triangular(&[Complex::new(-1.0, 1.0), Complex::new(-2.0, -4.0)], &[(8.0, 0.0)]);
    let (code, report) = certify_file(dir.path(), &a, &region);
    assert_eq!(code, 1);
    assert_eq!(report["oracle"]["inside"], true);
    assert_eq!(report["oracle"]["agrees"], false);
}
