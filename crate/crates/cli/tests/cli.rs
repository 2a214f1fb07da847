use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_isoclinic");

fn run<I, S>(args: I, dir: &Path) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(BIN).args(args).current_dir(dir).env_remove("ISOCLINIC_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_config(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, json).unwrap();
    path.display().to_string()
}

/// Rows of a CSV as floats, header dropped.
fn csv_rows(path: &Path) -> Vec<Vec<f64>> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(isoclinic::export::CSV_HEADER));
    lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect()
}

#[test]
fn gallery_list_prints_every_name() {
    let tmp = TempDir::new().unwrap();
    let o = run(["gallery", "list"], tmp.path());
    assert!(o.status.success());
    let names: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(names.len(), 9);
    assert!(names.iter().any(|n| n == "torus-asymptotic"));
}

#[test]
fn unknown_gallery_lists_valid_names() {
    let tmp = TempDir::new().unwrap();
    let o = run(["gallery", "catenoid"], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.starts_with("error[UnknownGallery]: "), "{err}");
    for n in isoclinic::gallery::names() {
        assert!(err.contains(n), "{n} missing from {err}");
    }
}

#[test]
fn malformed_expression_exits_1_with_offset() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "bad.json",
        r#"{"problem": "cauchy", "sign": "negative", "curve": ["t", "0", "t^2/(", "0"], "domain": {"disc": {"radius": 0.5}}}"#,
    );
    let o = run(["check", &cfg], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.starts_with("error[SyntaxError]: "), "{err}");
    assert!(err.contains("component 3") && err.contains("at byte 5"), "{err}");
}

#[test]
fn unknown_config_field_is_a_config_error() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "typo.json",
        r#"{"problem": "cauchy", "sign": "negative", "curv": ["t", "0", "t", "0"], "domain": {"disc": {"radius": 0.5}}}"#,
    );
    let o = run(["check", &cfg], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("curv"));
}

#[test]
fn degenerate_curve_exits_2() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "degenerate.json",
        r#"{
            "problem": "cauchy",
            "sign": "positive",
            "curve": ["cos(t)", "sin(t)", "2*cos(t/sqrt(2))", "2*sin(t/sqrt(2))"],
            "domain": {"disc": {"radius": 1.0}},
            "checks": {"good_curve": true}
        }"#,
    );
    let o = run(["check", &cfg], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[NotGoodCurve]: "), "{}", stderr(&o));
}

#[test]
fn wrong_causal_sign_exits_2() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "sign.json",
        r#"{"problem": "cauchy", "sign": "positive", "curve": ["t", "0", "t^2/2", "0"], "domain": {"disc": {"radius": 0.5}}}"#,
    );
    let o = run(["check", &cfg], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[WrongCausalSign]: "), "{}", stderr(&o));
}

#[test]
fn wrong_closed_form_exits_3() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "wrong.json",
        r#"{
            "problem": "cauchy",
            "sign": "negative",
            "curve": ["t", "0", "t^2/2", "0"],
            "domain": {"disc": {"radius": 0.5}},
            "grid": {"nu": 9, "nv": 9},
            "expected": {"primitive": ["w", "-i*w", "w^2/3", "-i*w^2/2"]}
        }"#,
    );
    let o = run(["check", &cfg], tmp.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("closed form"));
    assert!(stderr(&o).starts_with("error[CheckFailed]: "), "{}", stderr(&o));
}

#[test]
fn singular_ring_is_reported_but_not_fatal() {
    let tmp = TempDir::new().unwrap();
    let src = isoclinic::gallery::source("example-exa").unwrap().replace("0.9", "1.2");
    // the curve stays on its spacelike segment; only the disc reaches the ring |w| = 1
    let src = src.replacen("\"domain\"", "\"interval\": 0.9, \"domain\"", 1);
    let cfg = write_config(tmp.path(), "exa12.json", &src);
    let o = run(["check", &cfg], tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let cells: usize = out
        .lines()
        .find(|l| l.trim_start().starts_with("singular cells"))
        .and_then(|l| l.split_whitespace().last())
        .unwrap()
        .parse()
        .unwrap();
    assert!(cells > 0);
    assert!(out.contains("warning:"));
    // check writes nothing
    assert_eq!(fs::read_dir(tmp.path()).unwrap().count(), 1);
}

#[test]
fn usage_errors_exit_1() {
    let tmp = TempDir::new().unwrap();
    let o = run(["gallery", "example-exa", "--grid", "41by41"], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[UsageError]: "));
    let o = run(["--help"], tmp.path());
    assert!(o.status.success());
}

#[test]
fn bad_thread_count_is_rejected() {
    let tmp = TempDir::new().unwrap();
    let o = Command::new(BIN)
        .args(["gallery", "example-exa"])
        .current_dir(tmp.path())
        .env("ISOCLINIC_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn obj_counts_match_the_grid() {
    let tmp = TempDir::new().unwrap();
    let o = run(["gallery", "example-exa", "--format", "both", "--grid", "9x7", "--out", "mesh"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let obj = fs::read_to_string(tmp.path().join("mesh/example-exa.obj")).unwrap();
    let v = obj.lines().filter(|l| l.starts_with("v ")).count();
    let f: Vec<&str> = obj.lines().filter(|l| l.starts_with("f ")).collect();
    assert_eq!(v, 9 * 7);
    assert_eq!(f.len(), 2 * 8 * 6);
    let max_index = f.iter().flat_map(|l| l.split_whitespace().skip(1)).map(|x| x.parse::<usize>().unwrap()).max();
    assert_eq!(max_index, Some(63));
    assert_eq!(csv_rows(&tmp.path().join("mesh/example-exa.csv")).len(), 63);
    let report = fs::read_to_string(tmp.path().join("mesh/example-exa.report.json")).unwrap();
    assert!(report.contains("\"pass\": true"));
}

#[test]
fn csv_is_deterministic_across_runs_and_thread_counts() {
    let tmp = TempDir::new().unwrap();
    let a = run(["gallery", "bihelix", "--grid", "15x9", "--out", "a"], tmp.path());
    assert!(a.status.success());
    let b = Command::new(BIN)
        .args(["gallery", "bihelix", "--grid", "15x9", "--out", "b"])
        .current_dir(tmp.path())
        .env("ISOCLINIC_THREADS", "1")
        .output()
        .unwrap();
    assert!(b.status.success());
    let fa = fs::read(tmp.path().join("a/bihelix.csv")).unwrap();
    let fb = fs::read(tmp.path().join("b/bihelix.csv")).unwrap();
    assert!(!fa.is_empty());
    assert_eq!(fa, fb);
}

#[test]
fn exa_csv_matches_the_closed_form() {
    let tmp = TempDir::new().unwrap();
    let o = run(["gallery", "example-exa"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = csv_rows(&tmp.path().join("example-exa.csv"));
    assert_eq!(rows.len(), 41 * 41);
    for r in rows {
        let (u, v) = (r[0], r[1]);
        assert!((r[4] - (u * u - v * v) / 2.0).abs() <= 1e-8);
        assert!((r[5] - u * v).abs() <= 1e-8);
    }
}

#[test]
fn torus_csv_matches_the_closed_form() {
    let tmp = TempDir::new().unwrap();
    let o = run(["gallery", "torus-n2", "--out", "t"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    for r in csv_rows(&tmp.path().join("t/torus-n2.csv")) {
        let (u, v) = (r[0], r[1]);
        let (a, b) = ((-v).exp(), (-2.0 * v).exp());
        let target = [a * u.cos(), a * u.sin(), b * (2.0 * u).cos(), b * (2.0 * u).sin()];
        for k in 0..4 {
            assert!((r[2 + k] - target[k]).abs() <= 1e-8, "({u}, {v}) x{}", k + 1);
        }
    }
}

#[test]
fn unnamed_configs_take_the_file_stem() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "plane.json",
        r#"{"problem": "graph-pair", "sign": "positive", "psi": "0.5*w", "phi": "w", "domain": {"disc": {"radius": 1}}, "grid": {"nu": 5, "nv": 5}}"#,
    );
    let o = run(["solve", &cfg, "--out", "o"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(tmp.path().join("o/plane.csv").exists());
    assert!(tmp.path().join("o/plane.report.json").exists());
}
