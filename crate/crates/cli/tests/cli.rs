use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn phkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn run_ok(args: &[&str]) -> String {
    let o = phkit(args);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn has_line(report: &str, line: &str) -> bool {
    report.lines().any(|l| l == line)
}

#[test]
fn check_curve_tschirnhausen() {
    let r = run_ok(&["check-curve", data("tschirnhausen.curve").to_str().unwrap()]);
    assert!(has_line(&r, "ph: yes"), "{r}");
    assert!(has_line(&r, "sigma2: (3*t^2+3)^2"), "{r}");
    assert!(has_line(&r, "speed2: 9*t^4 + 18*t^2 + 9"), "{r}");
}

#[test]
fn check_curve_named_space_quintic() {
    let r = run_ok(&["check-curve", data("space_quintic.curve").to_str().unwrap()]);
    assert!(has_line(&r, "dim: 3"), "{r}");
    assert!(has_line(&r, "ph: yes"), "{r}");
}

#[test]
fn check_map_square_counterexample() {
    let r = run_ok(&["check-map", data("square.map").to_str().unwrap()]);
    assert!(has_line(&r, "ph_preserving: no"), "{r}");
    assert!(has_line(&r, "reason: diagonal entries differ"), "{r}");
}

#[test]
fn check_map_psi_real_form_and_word() {
    let r = run_ok(&["check-map", data("psi.map").to_str().unwrap()]);
    assert!(has_line(&r, "ph_preserving: yes"), "{r}");
    let r = run_ok(&["check-map", data("word.moebius").to_str().unwrap()]);
    assert!(has_line(&r, "moebius_factors: 3"), "{r}");
    assert!(has_line(&r, "lambda2: 4*(1/(u1^2+2*u1+u2^2+u3^2+1))^2"), "{r}");
}

#[test]
fn from_psi_example() {
    let r = run_ok(&["from-psi", "(z^2+1)/z"]);
    assert!(has_line(&r, "phi: 1/3*z^3 + 2*z - 1/z"), "{r}");
    assert!(has_line(&r, "ph_preserving: yes"), "{r}");
}

#[test]
fn from_psi_nonzero_residue_is_a_verdict() {
    let r = run_ok(&["from-psi", "z + 1/(z-1)"]);
    assert!(has_line(&r, "integrable: no"), "{r}");
    assert!(has_line(&r, "remainder: 2 / (z - 1)"), "{r}");
}

#[test]
fn solve_residues_quintic() {
    let r = run_ok(&["solve-residues", data("quintic.laurent").to_str().unwrap()]);
    assert!(has_line(&r, "solution: unique"), "{r}");
    assert!(has_line(&r, "a1: 1+2*i"), "{r}");
    assert!(has_line(&r, "a2: -1-2*i"), "{r}");
    assert!(
        has_line(&r, "curve_y: (-8*t^3 + 48*t^2 - 122*t + 125) / (t^4 - 6*t^3 + 23*t^2 - 34*t + 26)"),
        "{r}"
    );
    assert!(has_line(&r, "curve_ph: yes"), "{r}");
}

#[test]
fn solve_residues_given_and_unsolvable() {
    let r = run_ok(&["solve-residues", data("given.laurent").to_str().unwrap()]);
    assert!(has_line(&r, "solution: given"), "{r}");
    assert!(has_line(&r, "phi: -1/z"), "{r}");
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("none.laurent");
    std::fs::write(&spec, "poly: 0; pole 1; pole 2;\n").unwrap();
    let r = run_ok(&["solve-residues", spec.to_str().unwrap()]);
    assert!(has_line(&r, "solution: none"), "{r}");
}

#[test]
fn input_errors_exit_2() {
    let bad = data("bad.curve");
    let cases: [(&[&str], &str); 4] = [
        (&["check-curve", bad.to_str().unwrap()], "error: undeclared-variable"),
        (&["from-psi", "(z^2+1"], "error: syntax"),
        (&["check-map", "/definitely/not/here"], "error: io"),
        (&["reproduce-paper", "--only", "no-such-item"], "error: unknown-item"),
    ];
    for (args, line) in cases {
        let o = phkit(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(has_line(&stdout(&o), line), "{args:?}: {}", stdout(&o));
    }
    assert_eq!(phkit(&["no-such-verb"]).status.code(), Some(2));
}

#[test]
fn reproduce_full_run_passes() {
    let r = run_ok(&["reproduce-paper"]);
    assert_eq!(r.matches("status: PASS").count(), 11, "{r}");
    assert!(r.ends_with("passed: 11 of 11\n"), "{r}");
}

#[test]
fn reproduce_only_filters() {
    let r = run_ok(&["reproduce-paper", "--only", "quintic"]);
    let items: Vec<&str> = r.lines().filter_map(|l| l.strip_prefix("item: ")).collect();
    assert_eq!(items, ["quintic-residues", "quintic-curve"]);
}

#[test]
fn corrupted_golden_fails_that_item_only() {
    let golden = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("src/golden.txt")).unwrap();
    assert!(golden.contains("quintic-residues.a1: 1+2*i"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("golden.txt");
    std::fs::write(&path, golden.replace("quintic-residues.a1: 1+2*i", "quintic-residues.a1: 1-2*i")).unwrap();
    let o = phkit(&["reproduce-paper", "--only", "quintic", "--golden", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r = stdout(&o);
    let statuses: Vec<&str> = r.lines().filter_map(|l| l.strip_prefix("status: ")).collect();
    assert_eq!(statuses, ["FAIL", "PASS"], "{r}");
    assert!(has_line(&r, "mismatch: a1 expected `1-2*i`"), "{r}");
    assert!(has_line(&r, "passed: 1 of 2"), "{r}");
}

#[test]
fn reproduce_is_deterministic() {
    let a = phkit(&["reproduce-paper", "--only", "laurent-cubic"]);
    let b = phkit(&["reproduce-paper", "--only", "laurent-cubic"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn plot_quintic_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("quintic.svg");
    let curve = data("quintic.curve");
    let args = ["plot", curve.to_str().unwrap(), "--range", "-10", "10", "--samples", "400", "--out", out.to_str().unwrap()];
    let r = run_ok(&args);
    assert!(has_line(&r, "skipped: 0"), "{r}");
    let first = std::fs::read_to_string(&out).unwrap();
    assert!(first.starts_with("<svg"));
    assert_eq!(first.matches("<polyline").count(), 1);
    run_ok(&args);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), first);
}

#[test]
fn plot_map_grid_and_bad_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.svg");
    let map = data("psi.map");
    run_ok(&["plot", map.to_str().unwrap(), "--range", "-2", "2", "--samples", "30", "--out", out.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&out).unwrap().matches("<polyline").count(), 20);
    let o = phkit(&["plot", map.to_str().unwrap(), "--range", "1", "0", "--samples", "30", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(has_line(&stdout(&o), "error: invalid-plot"));
}
