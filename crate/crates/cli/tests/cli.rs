//! The `tcg` binary: exit codes, output and determinism.

use std::process::{Command, Output};

fn scenario(file: &str) -> String {
    format!("{}/scenarios/{}", env!("CARGO_MANIFEST_DIR"), file)
}

fn tcg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcg")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn validate_is_permissive_unless_strict() {
    let d = scenario("devisme.tcg");
    let o = tcg(&["validate", &d]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("representable FAIL"));
    assert_eq!(code(&tcg(&["--strict", "validate", &d])), 1);
    assert_eq!(code(&tcg(&["--strict", "validate", &scenario("epilogue1.tcg")])), 0);
}

#[test]
fn parse_errors_name_file_line_and_column() {
    let dir = std::env::temp_dir().join(format!("tcg-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.tcg");
    std::fs::write(&path, "GAME A = atom(+, a)\nGAME B = par(A\n").unwrap();
    let p = path.to_str().unwrap();
    let o = tcg(&["validate", p]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains(&format!("{}:2:15:", p)), "{}", stderr(&o));

    std::fs::write(&path, "GAME A = atom(+, a)\nSTRATEGY s : A -> Z\n").unwrap();
    let o = tcg(&["validate", p]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains(&format!("{}:2:", p)), "{}", stderr(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unknown_names_are_usage_errors() {
    assert_eq!(code(&tcg(&["validate", "fixture:nope"])), 2);
    assert_eq!(code(&tcg(&["collapse", &scenario("epilogue1.tcg"), "nosuch"])), 2);
    assert_eq!(code(&tcg(&["repro", "nosuch"])), 2);
    assert_eq!(code(&tcg(&["validate", "/nonexistent/file.tcg"])), 2);
}

#[test]
fn theorem_failure_exits_one() {
    let o = tcg(&["check-theorem", &scenario("deadlock.tcg"), "sigma", "tau"]);
    assert_eq!(code(&o), 1);
    let o = tcg(&[
        "check-theorem",
        &scenario("ex1.tcg"),
        "sigma",
        "tau",
        "--atlas",
        &scenario("repr_noncanonical.atlas"),
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL between steps 6 and 7"));
    assert_eq!(code(&tcg(&["check-theorem", &scenario("ex1.tcg"), "sigma", "tau"])), 0);
}

#[test]
fn repro_examples_pass() {
    for name in ["ex1", "epilogue1", "epilogue2", "repr", "devisme", "deadlock"] {
        let o = tcg(&["repro", name]);
        assert_eq!(code(&o), 0, "{}\n{}", name, stdout(&o));
        assert!(!stdout(&o).contains("FAIL"), "{}", name);
    }
}

#[test]
fn collapse_values() {
    let o = tcg(&["--format", "kv", "collapse", &scenario("epilogue1.tcg"), "both"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("entry row={✓} col={✓} weight=2\n"), "{}", stdout(&o));
    let o = tcg(&["--format", "kv", "collapse", &scenario("empty.tcg"), "nothing"]);
    assert_eq!(stdout(&o), "relation strategy=nothing rows=1 cols=1 nonzero=1\nentry row=∅ col=∅ weight=1\n");
}

#[test]
fn kv_records_have_a_kind_and_fields() {
    let o = tcg(&["--format", "kv", "run", &scenario("epilogue2.tcg")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(!text.is_empty());
    for line in text.lines() {
        let mut words = line.split(' ');
        let kind = words.next().unwrap();
        assert!(!kind.is_empty() && !kind.contains('='), "{}", line);
    }
}

#[test]
fn output_is_deterministic() {
    for file in ["ex1.tcg", "epilogue1.tcg", "epilogue2.tcg", "devisme.tcg", "deadlock.tcg", "empty.tcg"] {
        let a = tcg(&["run", &scenario(file)]);
        let b = tcg(&["run", &scenario(file)]);
        assert_eq!(a.stdout, b.stdout, "{}", file);
        assert_eq!(code(&a), code(&b));
    }
}

#[test]
fn fixtures_load_by_name() {
    let o = tcg(&["collapse", "fixture:epilogue1", "sigma"]);
    assert_eq!(code(&o), 0);
    let o = tcg(&["classes", "fixture:devisme", "G"]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).is_empty());
}

#[test]
fn print_is_a_fixed_point() {
    let o = tcg(&["print", &scenario("epilogue2.tcg")]);
    assert_eq!(code(&o), 0);
    let dir = std::env::temp_dir().join(format!("tcg-cli-print-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p.tcg");
    std::fs::write(&path, &o.stdout).unwrap();
    let again = tcg(&["print", path.to_str().unwrap()]);
    assert_eq!(again.stdout, o.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
