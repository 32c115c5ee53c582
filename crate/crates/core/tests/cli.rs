//! Command-line behaviour: outputs, exit codes and file handling.

use std::fs;
use std::path::{Path, PathBuf};

use telescopers::cli::run;
use telescopers::hyperterm::ProperTerm;
use telescopers::telescope::verify_pair;
use telescopers::termio;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Out {
    let mut argv = vec!["telescopers"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    Out {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn fixture(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn temp_file(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn load(rel: &str) -> ProperTerm {
    termio::parse_term(&fs::read_to_string(fixture(rel)).unwrap()).unwrap()
}

#[test]
fn params_of_first_example() {
    let o = cli(&["params", &fixture("terms/example1.term")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, "delta=2 theta=2 lambda=2 mu=0 nu=4\n");
}

#[test]
fn curve_table_window() {
    let o = cli(&["curve", &fixture("terms/example1.term"), "--rmin", "4", "--rmax", "8"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, "r,d_min\n4,34\n5,21\n6,16\n7,14\n8,13\n");
    // rows below nu are dropped
    let o = cli(&["curve", &fixture("terms/example1.term"), "--rmin", "0", "--rmax", "4"]);
    assert_eq!(o.stdout, "r,d_min\n4,34\n");
}

#[test]
fn curve_to_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let o = cli(&[
        "curve",
        &fixture("terms/example2.term"),
        "--rmin",
        "3",
        "--rmax",
        "4",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0);
    assert_eq!(fs::read_to_string(path).unwrap(), "r,d_min\n3,24\n4,16\n");
}

#[test]
fn zeilberger_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let op = dir.path().join("binomial.op");
    let o = cli(&["telescope", &fixture("terms/binomial.term"), "--out", op.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&op).unwrap();
    assert!(text.starts_with("# order 1 degree 0\n"), "{text}");
    let (l, c) = termio::parse_operator(&text).unwrap();
    assert!(verify_pair(&load("terms/binomial.term"), &l, &c.unwrap()));

    let o = cli(&["verify", &fixture("terms/binomial.term"), op.to_str().unwrap()]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "valid\n"));
}

#[test]
fn structured_mode_on_second_example() {
    let o = cli(&["telescope", &fixture("terms/example2.term"), "--order", "3", "--degree", "24"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let (l, c) = termio::parse_operator(&o.stdout).unwrap();
    assert!(l.order() <= 3 && l.degree() <= 24);
    assert!(verify_pair(&load("terms/example2.term"), &l, &c.unwrap()));
}

#[test]
fn structured_mode_without_solution_exits_one() {
    let o = cli(&["telescope", &fixture("terms/example1.term"), "--order", "0", "--degree", "0"]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.is_empty());
    assert!(o.stderr.contains("no telescoper"), "{}", o.stderr);
    let o = cli(&["telescope", &fixture("terms/example1.term"), "--mode", "structured"]);
    assert_eq!(o.code, 2);
}

#[test]
fn tampered_operator_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let op = temp_file(&dir, "bad.op", "L: [-2, 1]\ncnum: k\ncden: n - k + 1\n");
    let o = cli(&["verify", &fixture("terms/binomial.term"), op.to_str().unwrap()]);
    assert_eq!((o.code, o.stderr.as_str()), (1, "invalid\n"));
    let bare = temp_file(&dir, "bare.op", "L: [-2, 1]\n");
    let o = cli(&["verify", &fixture("terms/binomial.term"), bare.to_str().unwrap()]);
    assert_eq!(o.code, 2);
}

#[test]
fn region_reports_progress_and_cells() {
    let o = cli(&["region", &fixture("terms/binomial.term"), "--rmax", "2", "--dmax", "1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stderr, "row r=0 done\nrow r=1 done\nrow r=2 done\n");
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "r,d,exists");
    assert_eq!(lines.len(), 1 + 3 * 2);
    assert!(lines.contains(&"0,0,0") && lines.contains(&"1,0,1") && lines.contains(&"2,1,1"));
}

#[test]
fn splittable_terms_need_override() {
    let dir = tempfile::tempdir().unwrap();
    let term = temp_file(&dir, "split.term", "num: Gamma(n + k)\nden: Gamma(n + k + 1)\n");
    let o = cli(&["telescope", term.to_str().unwrap(), "--order", "1", "--degree", "1"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("rational"), "{}", o.stderr);
    let o = cli(&[
        "telescope",
        term.to_str().unwrap(),
        "--order",
        "1",
        "--degree",
        "1",
        "--allow-splittable",
    ]);
    assert_ne!(o.code, 2, "{}", o.stderr);
}

#[test]
fn cost_and_suggest() {
    let o = cli(&["cost", &fixture("terms/example1.term"), "--rmin", "4", "--rmax", "5"]);
    assert_eq!(o.stdout, "r,d_min,cost\n4,34,167936\n5,21,205770\n");
    let o = cli(&["cost", &fixture("terms/example1.term"), "--rmin", "4", "--rmax", "4", "--kappa", "1/2"]);
    assert_eq!(o.stdout, "r,d_min,cost\n4,34,83968\n");
    let o = cli(&["suggest", &fixture("terms/example1.term")]);
    assert_eq!(o.stdout, "r=4 d=34 cost=167936\n");
    let o = cli(&["suggest", &fixture("rational/example1.rat"), "--rational"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.starts_with("r="));
    let o = cli(&["cost", &fixture("terms/example1.term"), "--kappa", "x"]);
    assert_eq!(o.code, 2);
}

#[test]
fn rational_pipeline() {
    let o = cli(&["decompose", &fixture("rational/example1.rat")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, fs::read_to_string(fixture("decomp/example1.decomp")).unwrap());

    let o = cli(&["rat-curve", &fixture("rational/example1.rat"), "--rmin", "5", "--rmax", "7"]);
    assert_eq!(o.stdout, "r,d_min\n5,31\n6,18\n7,14\n");
    // a decomposition file is accepted wherever a rational file is
    let o = cli(&["rat-curve", &fixture("decomp/example1.decomp"), "--rmin", "5", "--rmax", "5"]);
    assert_eq!(o.stdout, "r,d_min\n5,31\n");

    let dir = tempfile::tempdir().unwrap();
    let op = dir.path().join("h.op");
    let o = cli(&["rat-telescope", &fixture("rational/harmonic.rat"), "--order", "1", "--out", op.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let o = cli(&["rat-verify", &fixture("rational/harmonic.rat"), op.to_str().unwrap()]);
    assert_eq!(o.stdout, "valid\n");
    let o = cli(&["rat-verify", &fixture("rational/two_poles.rat"), &fixture("operators/harmonic_rat.op")]);
    assert_eq!(o.code, 1);
    let o = cli(&["rat-telescope", &fixture("rational/two_poles.rat"), "--order", "0"]);
    assert_eq!(o.code, 2, "{}", o.stdout);
}

#[test]
fn rational_input_errors() {
    let o = cli(&["decompose", &fixture("rational/abramov_violation.rat")]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.starts_with("error: "));
    let dir = tempfile::tempdir().unwrap();
    let bad = temp_file(&dir, "nl.rat", "p: 1\nq: k^2 + n\n");
    let o = cli(&["decompose", bad.to_str().unwrap()]);
    assert_eq!(o.code, 2);
}

#[test]
fn lift_by_k_free_factor() {
    let dir = tempfile::tempdir().unwrap();
    let op = temp_file(&dir, "l.op", "L: [-1, 1]\n");
    let o = cli(&["lift", op.to_str().unwrap(), "--a", "n + 1", "--b", "1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(termio::parse_telescoper(&o.stdout).unwrap(), termio::parse_telescoper("L: [-n - 1, 1]").unwrap());
    let o = cli(&["lift", op.to_str().unwrap(), "--a", "0", "--b", "1"]);
    assert_eq!(o.code, 2);
}

#[test]
fn syntax_errors_carry_locations() {
    let dir = tempfile::tempdir().unwrap();
    let term = temp_file(&dir, "bad.term", "x: 1\npoly: n + $\n");
    let o = cli(&["params", term.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    let want = format!("error: {}:2:", term.display());
    assert!(o.stderr.starts_with(&want), "{}", o.stderr);
    let o = cli(&["params", dir.path().join("missing.term").to_str().unwrap()]);
    assert_eq!(o.code, 2);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(cli(&["params"]).code, 2);
    assert_eq!(cli(&["params", "x.term", "--bogus"]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    let help = cli(&["--help"]);
    assert_eq!(help.code, 0);
    for sub in ["params", "curve", "telescope", "region", "verify", "cost", "suggest", "rat-curve", "decompose"] {
        assert!(help.stdout.contains(sub), "{sub} missing from help");
    }
}
