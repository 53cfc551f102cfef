use std::f64::consts::PI;
use std::process::Command;

use symgate_cli::{lmg_csv, run, sweep_csv, EXIT_OK, EXIT_USAGE};

fn symgate(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("symgate").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn value_after(text: &str, key: &str) -> f64 {
    let line = text
        .lines()
        .find(|l| l.starts_with(key))
        .unwrap_or_else(|| panic!("no '{key}' in\n{text}"));
    line[key.len()..].trim().parse().unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn basis_verify_passes() {
    let (code, out, err) = symgate(&["basis", "--verify"]);
    assert_eq!(code, EXIT_OK, "{out}{err}");
    assert!(out.contains("128/128 table entries verified"));
    assert!(out.contains("8/8 Gell-Mann relations verified"));
    // The two sign misprints are reported, not hidden.
    assert!(out.contains("[M5, M7], [M7, M5]"));
    assert_eq!(err.matches("known misprint").count(), 2);
}

#[test]
fn basis_show_m3() {
    let (code, out, _) = symgate(&["basis", "--show", "M3"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<Vec<&str>> = out
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().collect())
        .collect();
    assert_eq!(
        rows,
        vec![
            vec!["1", "0", "0"],
            vec!["0", "0", "0"],
            vec!["0", "0", "-1"]
        ]
    );
}

#[test]
fn basis_counts() {
    for (j, n) in [
        ("3/2", "16"),
        ("1", "9"),
        ("1/2", "4"),
        ("5/2", "36"),
        ("0", "1"),
    ] {
        let (code, out, _) = symgate(&["basis", "--j", j, "--count"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.trim(), n);
    }
    let (code, _, _) = symgate(&["basis", "--j", "3", "--count"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn basis_tensor_verify() {
    let (code, out, _) = symgate(&["basis", "--j", "5/2", "--verify"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("36 Hermitian tensor operators"));
}

#[test]
fn gate_reports() {
    let (code, out, _) = symgate(&["gate", "4", "--theta", "1.5707963"]);
    assert_eq!(code, EXIT_OK);
    assert!((value_after(&out, "e_p =") - 2.0 / 9.0).abs() < 1e-7);
    assert!(out.contains("class: special perfect entangler"));

    let (_, out, _) = symgate(&["gate", "3", "--theta", "0.7"]);
    assert_eq!(value_after(&out, "e_p ="), 0.0);
    assert!(out.contains("class: local gate"));

    let (_, out, _) = symgate(&["gate", "4", "--theta", "0.7853982"]);
    assert!((value_after(&out, "e_p =") - 1.0 / 6.0).abs() < 1e-7);

    let (code, out, _) = symgate(&["gate", "8", "--theta", "sqrt3*pi/2"]);
    assert_eq!(code, EXIT_OK);
    assert!((value_after(&out, "e_p =") - 2.0 / 9.0).abs() < 1e-14);
}

#[test]
fn gate_spe_flag() {
    let (code, out, _) = symgate(&["gate", "8", "--spe"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("special perfect entangler"));
    let (code, _, err) = symgate(&["gate", "2", "--spe"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("never reaches"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["gate", "9", "--theta", "1"],
        vec!["gate", "0", "--theta", "1"],
        vec!["gate", "4"],
        vec!["gate", "4", "--theta", "pie"],
        vec!["sweep", "4", "--theta-max", "1", "--steps", "1"],
        vec![
            "sweep",
            "4",
            "--theta-min",
            "1",
            "--theta-max",
            "1",
            "--steps",
            "3",
        ],
        vec!["lmg", "--g1", "1", "--g2-spe", "--t", "0"],
        vec!["frobnicate"],
        vec![],
    ] {
        let (code, _, err) = symgate(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_0() {
    let (code, out, _) = symgate(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("sweep"));
}

#[test]
fn sweep_b4_matches_formula() {
    let csv = sweep_csv(4, 0.0, PI / 2.0, 5).unwrap();
    assert!(csv.starts_with("theta,g1_abs,ep,class\n"));
    assert!(!csv.contains('\r'));
    let rows = csv_rows(&csv);
    assert_eq!(rows.len(), 5);
    for row in &rows {
        let th: f64 = row[0].parse().unwrap();
        let ep: f64 = row[2].parse().unwrap();
        assert!((ep - 2.0 / 9.0 * (1.0 - th.cos().powi(4))).abs() < 1e-14);
    }
    assert_eq!(rows[0][3], "local");
    assert_eq!(rows[2][3], "perfect");
    assert_eq!(rows[4][3], "special_perfect");
}

#[test]
fn sweep_b3_all_zero_and_b8_endpoint() {
    let rows = csv_rows(&sweep_csv(3, 0.0, PI, 7).unwrap());
    assert!(rows.iter().all(|r| r[2] == "0"));
    let rows = csv_rows(&sweep_csv(8, 0.0, 3f64.sqrt() * PI / 2.0, 11).unwrap());
    let last: f64 = rows.last().unwrap()[2].parse().unwrap();
    assert!((last - 2.0 / 9.0).abs() < 1e-14);
}

#[test]
fn sweep_writes_file_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let (code, _, _) = symgate(&[
            "sweep",
            "4",
            "--to",
            "pi/2",
            "--steps",
            "33",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn sweep_unwritable_path() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("missing").join("x.csv");
    let (code, _, err) = symgate(&[
        "sweep",
        "4",
        "--to",
        "1",
        "--steps",
        "3",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("cannot write"));
}

#[test]
fn act_examples() {
    let (code, out, _) = symgate(&[
        "act", "4", "--theta", "pi/2", "--alpha", "pi/2", "--phi", "0",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(value_after(&out, "concurrence ="), 1.0);

    let (_, out, _) = symgate(&[
        "act", "1", "--theta", "1.0", "--alpha", "0.3", "--phi", "0.4",
    ]);
    assert_eq!(value_after(&out, "concurrence ="), 0.0);

    let (_, out, _) = symgate(&["act", "5", "--theta", "pi/2", "--alpha", "0"]);
    assert!(
        out.contains("output (spin-1): [0.5, -0.707106781186548, -0.5]"),
        "{out}"
    );
}

#[test]
fn act_negative_angles() {
    let (code, out, _) = symgate(&["act", "7", "--spe", "--alpha", "-pi/2", "--phi", "-1"]);
    assert_eq!(code, EXIT_OK);
    assert!((value_after(&out, "concurrence =") - 1.0).abs() < 1e-14);
}

#[test]
fn lmg_single_time_spe() {
    let (code, out, _) = symgate(&["lmg", "--g1", "1", "--g2-spe", "--t", "pi/8"]);
    assert_eq!(code, EXIT_OK);
    assert!((value_after(&out, "e_p =") - 2.0 / 9.0).abs() < 1e-14);
    assert!((value_after(&out, "concurrence =") - 1.0).abs() < 1e-14);
    assert!(out.contains("g2 = 3"));
}

#[test]
fn lmg_identity_at_zero_time() {
    let (_, out, _) = symgate(&["lmg", "--g1", "1", "--g2", "0.4", "--t", "0"]);
    assert_eq!(value_after(&out, "concurrence ="), 0.0);
    assert_eq!(value_after(&out, "e_p ="), 0.0);
}

#[test]
fn lmg_series_zeros_at_quarter_pi() {
    let csv = lmg_csv(1.0, 0.3, 0.0, PI, 41).unwrap();
    assert!(csv.starts_with("t,ep,concurrence\n"));
    for row in csv_rows(&csv) {
        let t: f64 = row[0].parse().unwrap();
        let c: f64 = row[2].parse().unwrap();
        let on_zero = ((t / (PI / 4.0)).round() * PI / 4.0 - t).abs() < 1e-12;
        assert_eq!(c == 0.0, on_zero, "t = {t}, C = {c}");
    }
}

#[test]
fn decompose_files() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    };
    let m7 = write(
        "m7.json",
        r#"{"dim":3,"entries":[[[0,0],[0,0],[1,0]],[[0,0],[0,0],[0,0]],[[1,0],[0,0],[0,0]]]}"#,
    );
    let (code, out, _) = symgate(&["decompose", &m7]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(value_after(&out, "h7 ="), 2.0);
    for k in [0, 1, 2, 3, 4, 5, 6, 8] {
        assert_eq!(value_after(&out, &format!("h{k} =")), 0.0);
    }

    // g1 = g2 = 1: H = 2 M7 + (2/√3)(√8 M0 - M8).
    let lmg = write(
        "lmg.json",
        r#"{"dim":3,"entries":[[[2,0],[0,0],[2,0]],[[0,0],[4,0],[0,0]],[[2,0],[0,0],[2,0]]]}"#,
    );
    let (code, out, _) = symgate(&["decompose", &lmg]);
    assert_eq!(code, EXIT_OK);
    let g2p = 2.0 / 3f64.sqrt();
    assert!((value_after(&out, "h7 =") - 4.0).abs() < 1e-13);
    assert!((value_after(&out, "h0 =") - 2.0 * g2p * 8f64.sqrt()).abs() < 1e-13);
    assert!((value_after(&out, "h8 =") + 2.0 * g2p).abs() < 1e-13);

    let nh = write(
        "nh.json",
        r#"{"dim":3,"entries":[[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]]]}"#,
    );
    let (code, _, err) = symgate(&["decompose", &nh]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("not Hermitian"));

    let bad = write("bad.json", "{\"dim\": 3}");
    assert_eq!(symgate(&["decompose", &bad]).0, EXIT_USAGE);
    assert_eq!(
        symgate(&["decompose", "/definitely/not/here.json"]).0,
        EXIT_USAGE
    );

    // Two-qubit input acting separately on triplet and singlet: M3 ⊕ 5.
    let q = write(
        "q.json",
        r#"{"dim":4,"entries":[[[1,0],[0,0],[0,0],[0,0]],[[0,0],[2.5,0],[-2.5,0],[0,0]],[[0,0],[-2.5,0],[2.5,0],[0,0]],[[0,0],[0,0],[0,0],[-1,0]]]}"#,
    );
    let (code, out, _) = symgate(&["decompose", &q]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("singlet eigenvalue 5"));
    assert_eq!(value_after(&out, "h3 ="), 2.0);

    let spin_half = write(
        "s.json",
        r#"{"dim":2,"entries":[[[1,0],[0,0]],[[0,0],[-1,0]]]}"#,
    );
    let (code, out, _) = symgate(&["decompose", &spin_half]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("h^1_0 = 2"));
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_symgate"))
        .args(["basis", "--j", "3/2", "--count"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "16");

    let out = Command::new(env!("CARGO_BIN_EXE_symgate"))
        .args(["gate", "9", "--theta", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
