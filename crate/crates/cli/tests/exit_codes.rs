use std::process::Command;

use dercalc_cli::execute;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["dercalc"];
    argv.extend_from_slice(args);
    let r = execute(&argv);
    (r.code, r.stdout, r.stderr)
}

#[test]
fn documented_examples() {
    let (c, o, _) = run(&["der", "eval", "--tower", "t:trans", "--der", "d(t)=1", "--expr", "d(t^3)"]);
    assert_eq!((c, o.as_str()), (0, "3*t^2\n"));

    let (c, o, _) = run(&["feq", "solve", "--eq", "cauchy-add", "--carrier", "gf:3"]);
    assert_eq!(c, 0);
    assert!(o.starts_with("cauchy-add over GF(3): 3 solutions\n"), "{o}");

    let table = concat!(env!("CARGO_MANIFEST_DIR"), "/data/rem1.gamma");
    let (c, o, _) = run(&["hod", "gamma-check", "--n", "4", "--table", table]);
    assert_eq!(c, 1);
    assert!(o.contains("(i, j, k) = (1, 1, 2)"), "{o}");
}

#[test]
fn check_failures_exit_1() {
    let (c, o, e) = run(&["cocycle", "verify", "--carrier", "gf:5", "--F", "a", "--axioms", "alpha"]);
    assert_eq!(c, 1);
    assert_eq!(o, "alpha: FAIL at (a, b) = (0, 1): 0 != 1\n");
    assert!(e.is_empty());
    let (c, _, _) = run(&["feq", "check", "--eq", "jensen", "--carrier", "window:-10:10", "--fn", "f=parity"]);
    assert_eq!(c, 1);
    let (c, _, _) =
        run(&["der", "residual", "--tower", "t: trans", "--der", "d(t)=1", "--slope", "1", "square", "--x", "t", "--expect-zero"]);
    assert_eq!(c, 1);
    let (c, _, _) = run(&["der", "residual", "--tower", "t: trans", "--der", "d(t)=1", "square", "--x", "t", "--expect-zero"]);
    assert_eq!(c, 0);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["der", "eval", "--tower", "t: trans"],
        &["der", "eval", "--tower", "t: trans", "--der", "d(t)=1", "--expr", "t^^2"],
        &["der", "eval", "--tower", "t: trans", "--der", "d(u)=1", "--expr", "t"],
        &["feq", "check", "--eq", "no-such-equation", "--carrier", "gf:3", "--fn", "f=x"],
        &["feq", "check", "--eq", "cauchy-add", "--carrier", "gf:4", "--fn", "f=x"],
        &["cocycle", "verify", "--carrier", "gf:5", "--F", "a", "--mode", "sometimes"],
        &["feq", "solve", "--eq", "cauchy-add", "--carrier", "window:-2:2"],
    ] {
        let (c, o, e) = run(args);
        assert_eq!(c, 2, "{args:?}: {o}{e}");
        assert!(e.starts_with("error"), "{args:?}: {e}");
    }
    let (c, o, e) = run(&["der", "eval", "--tower", "t: trans", "--der", "d(t)=1", "--expr", "t^^2"]);
    assert_eq!((c, o.as_str()), (2, ""));
    assert_eq!(e, "error: syntax error at line 1, column 3: expected integer exponent, found `^`\n");
}

#[test]
fn help_goes_to_stdout() {
    let (c, o, e) = run(&["--help"]);
    assert_eq!(c, 0);
    assert!(o.contains("feq") && e.is_empty());
}

#[test]
fn records_format() {
    let (c, o, _) = run(&["--format", "records", "feq", "check", "--eq", "cauchy-add", "--carrier", "gf:5", "--fn", "f=2*x"]);
    assert_eq!(c, 0);
    assert_eq!(o, "check\tname=cauchy-add\tstatus=pass\tchecked=25\tskipped=0\n");
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_dercalc"))
        .args(["feq", "solve", "--eq", "hosszu", "--carrier", "gf:5"])
        .env("DERCALC_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&out.stderr), "error: budget exceeded: 3125 > 100\n");
}
