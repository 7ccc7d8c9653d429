mod common;

use folia::io::cli::run;
use folia::io::transcript::TRANSCRIPT_SCHEMA;
use serde_json::Value;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn folia(args: &[&str]) -> Output {
    folia_with_stdin(args, "")
}

fn folia_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("folia").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

const LAMBDA_FORM: &str = "lambda*y*z dx + x*z dy - (1+lambda)*x*y dz";

#[test]
fn sing_on_the_pencil() {
    let o = folia(&["sing", "--form", "y dx - x dy + 0 dz"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, "degree 0\n(0:0:1) mu=1\ndarboux 1 = 1 ok\n");
}

#[test]
fn sing_json_lists_points_and_darboux() {
    let o = folia(&["sing", "--json", "--param", "lambda=2", "--form", LAMBDA_FORM]);
    assert_eq!(o.code, 0);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    let pts: Vec<&str> = v["singular"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["point"].as_str().unwrap())
        .collect();
    assert_eq!(pts, ["(0:0:1)", "(0:1:0)", "(1:0:0)"]);
    assert_eq!(v["darboux"]["ok"], Value::Bool(true));
}

#[test]
fn input_from_file_and_stdin() {
    let path = common::data_dir().join("corpus/04_diagonal_123.form");
    let from_file = folia(&["sing", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    let from_stdin = folia_with_stdin(&["sing", "-"], &text);
    assert_eq!(from_file.code, 0, "{}", from_file.stderr);
    assert_eq!(from_file.stdout, from_stdin.stdout);
    assert!(from_file.stdout.contains("darboux 3 = 3 ok"));
}

#[test]
fn restrict_reports_invariance_and_normal_part() {
    let o = folia(&["restrict", "--line", "x", "--form", "2*y*z dx - 3*x*z dy + x*y dz"]);
    assert_eq!(o.code, 0);
    assert_eq!(
        o.stdout,
        "line x = 0\ninvariant yes\ntangential (0) ds + (0) dt\nnormal 2*y*z dx\n"
    );
    let o = folia(&["restrict", "--line", "x + y + z", "--form", "2*y*z dx - 3*x*z dy + x*y dz"]);
    assert!(o.stdout.contains("invariant no"));
}

#[test]
fn pullback_by_each_map() {
    let o = folia(&["pullback", "--map", "I1", "--param", "lambda=2", "--form", LAMBDA_FORM]);
    assert_eq!(o.code, 0);
    assert_eq!(
        o.stdout,
        "(-4*x^2*y - 2*y^2*z) dx + (4*x^3 - x*y*z) dy + (3*x*y^2) dz\ndegree 2\nextracted factor y^2\n"
    );
    let o = folia(&["pullback", "--map", "phi", "--form", "y dx - x dy"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let o = folia(&[
        "pullback", "--map", "matrix", "--matrix", "1,0,0; 0,0,1; 0,1,0", "--form",
        "2*y*z dx + x*z dy - 3*x*y dz",
    ]);
    assert!(o.stdout.starts_with("(2*y*z) dx + (-3*x*z) dy + (x*y) dz\n"));
    // a matrix is required for --map matrix
    assert_eq!(folia(&["pullback", "--map", "matrix", "--form", "y dx - x dy"]).code, 2);
    let o = folia(&["pullback", "--map", "matrix", "--matrix", "1,0,0; 0,1,0; 1,1,0", "--form", "y dx - x dy"]);
    assert_eq!(o.code, 3);
}

#[test]
fn lemma_step_on_an_invariant_line() {
    let o = folia(&["lemma-step", "--json", "--line", "y", "--param", "lambda=2", "--form", LAMBDA_FORM]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["map"], "phi");
    assert_eq!(v["resultDegree"], 3);
    assert_eq!(v["singular"].as_array().unwrap().len(), 2);
    // a line through a single singular point is rejected
    let o = folia(&["lemma-step", "--line", "x + y + z", "--param", "lambda=2", "--form", LAMBDA_FORM]);
    assert_eq!(o.code, 3);
}

#[test]
fn reduce_then_replay() {
    let o = folia(&["reduce", "--json", "--param", "lambda=3", "--form", LAMBDA_FORM]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let doc: Value = serde_json::from_str(&o.stdout).unwrap();
    let schema: Value = serde_json::from_str(TRANSCRIPT_SCHEMA).unwrap();
    common::validate(&schema, &doc).unwrap();
    assert_eq!(doc["final"]["singular"].as_array().unwrap().len(), 1);
    assert_eq!(doc["final"]["noAffineSingularity"], Value::Bool(true));

    let r = folia_with_stdin(&["replay", "-"], &o.stdout);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("replayed 2 step(s)\n"));

    let tampered = o.stdout.replacen("\"mu\": 1", "\"mu\": 2", 1);
    let r = folia_with_stdin(&["replay", "-"], &tampered);
    assert_eq!(r.code, 3, "{}", r.stderr);
    let r = folia_with_stdin(&["replay", "-"], "{\"input\": 1}");
    assert_eq!(r.code, 2);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        &["reduce", "--json", "--param", "lambda=2", "--form", LAMBDA_FORM][..],
        &["reduce", "--param", "lambda=2", "--form", LAMBDA_FORM][..],
        &["sing", "--form", "(x*y - z^2) dx + (y*z - x^2) dy + (x*z - y^2) dz"][..],
    ] {
        let a = folia(args);
        let b = folia(args);
        assert_eq!(a.code, 0);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn verify_example_passes_for_two_and_three() {
    for l in ["2", "3"] {
        let o = folia(&["verify-example", "--lambda", l]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert!(!o.stdout.contains("FAIL"));
        assert_eq!(o.stdout.matches("PASS").count(), 8);
    }
    let o = folia(&["verify-example", "--lambda", "2"]);
    assert!(o.stdout.contains("restriction to x = 0: -z^5 dx"));
}

#[test]
fn verify_example_flags_lambda_one() {
    let o = folia(&["verify-example", "--lambda", "1"]);
    assert_eq!(o.code, 3);
    assert!(o.stdout.contains("FAIL after I2: restriction"));
    let o = folia(&["verify-example", "--json", "--lambda", "1"]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["ok"], Value::Bool(false));
}

#[test]
fn exit_codes_by_failure_class() {
    // parse
    assert_eq!(folia(&["sing", "--form", "x dx +"]).code, 2);
    assert_eq!(folia(&["no-such-command"]).code, 2);
    // validation: Euler residual reported
    let o = folia(&["sing", "--form", "x dx + y dy"]);
    assert_eq!(o.code, 3);
    assert!(o.stderr.contains("x^2 + y^2"), "{}", o.stderr);
    assert!(o.stderr.contains("dz"));
    // unreadable input
    assert_eq!(folia(&["sing", "/no/such/file"]).code, 3);
    // help is not an error
    assert_eq!(folia(&["--help"]).code, 0);
}

fn binary(args: &[&str], ceiling: &str) -> std::process::Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_folia"))
        .args(args)
        .env("FOLIA_DEGREE_CEILING", ceiling)
        .output()
        .unwrap()
}

#[test]
fn degree_ceiling_aborts_with_partial_transcript() {
    let o = binary(&["reduce", "--json", "--param", "lambda=2", "--form", LAMBDA_FORM], "3");
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("degree ceiling 3"));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["steps"].as_array().unwrap().len(), 1);

    let o = binary(&["reduce", "--form", "y dx - x dy"], "3");
    assert_eq!(o.status.code(), Some(0));
    let o = binary(&["reduce", "--form", "y dx - x dy"], "many");
    assert_eq!(o.status.code(), Some(3));
}
