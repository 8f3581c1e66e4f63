//! Session scripts and README examples, compared byte-for-byte with their
//! committed transcripts. Set `DERCALC_BLESS=1` to rewrite the `.out` files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn dercalc(dir: &Path, args: &[String]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_dercalc"))
        .args(args)
        .current_dir(dir)
        .env_remove("DERCALC_BUDGET")
        .output()
        .expect("dercalc runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("exit code"),
    )
}

fn render(stdout: &str, stderr: &str, code: i32) -> String {
    let mut s = stdout.to_string();
    if !stderr.is_empty() {
        s.push_str("--- stderr\n");
        s.push_str(stderr);
    }
    s.push_str(&format!("--- exit {code}\n"));
    s
}

#[test]
fn session_transcripts() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let bless = std::env::var_os("DERCALC_BLESS").is_some();
    let mut scripts: Vec<PathBuf> = fs::read_dir(root.join("sessions"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ds"))
        .collect();
    scripts.sort();
    assert!(scripts.len() >= 8, "session corpus went missing");
    let mut failures = vec![];
    for script in &scripts {
        let name = script.file_name().unwrap().to_str().unwrap();
        let mut args = vec![];
        if name.starts_with("records") {
            args.extend(["--format".to_string(), "records".to_string()]);
        }
        args.extend(["run".to_string(), format!("sessions/{name}")]);
        let (o, e, c) = dercalc(&root, &args);
        let got = render(&o, &e, c);
        let expected = script.with_extension("out");
        if bless {
            fs::write(&expected, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&expected).unwrap_or_else(|_| panic!("missing {}", expected.display()));
        if got != want {
            failures.push(format!("{name}:\n--- expected\n{want}--- got\n{got}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

/// A `console` block: `$ dercalc ...` lines, each followed by its output and
/// optionally `[exit N]` when the code is not 0.
fn readme_examples(text: &str) -> Vec<(Vec<String>, String, i32)> {
    let mut out = vec![];
    let mut in_block = false;
    let mut cur: Option<(Vec<String>, String, i32)> = None;
    for line in text.lines() {
        if !in_block {
            in_block = line.trim() == "```console";
            continue;
        }
        if line.trim() == "```" {
            out.extend(cur.take());
            in_block = false;
        } else if let Some(cmd) = line.strip_prefix("$ dercalc ") {
            out.extend(cur.take());
            cur = Some((shlex::split(cmd).expect("quoted command"), String::new(), 0));
        } else if let Some(c) = line.strip_prefix("[exit ").and_then(|l| l.strip_suffix(']')) {
            cur.as_mut().expect("exit line after a command").2 = c.parse().unwrap();
        } else {
            let c = cur.as_mut().expect("output after a command");
            c.1.push_str(line);
            c.1.push('\n');
        }
    }
    out
}

#[test]
fn readme_examples_match() {
    let repo = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
    let text = fs::read_to_string(repo.join("README.md")).unwrap();
    let examples = readme_examples(&text);
    assert!(examples.len() >= 10, "README lost its examples");
    for (args, want, code) in examples {
        let (o, e, c) = dercalc(&repo, &args);
        assert_eq!((o.as_str(), c), (want.as_str(), code), "dercalc {}\nstderr: {e}", args.join(" "));
    }
}

#[test]
fn readme_parser() {
    let t = "x\n```console\n$ dercalc a 'b c'\nline\n[exit 1]\n$ dercalc d\n```\n";
    let ex = readme_examples(t);
    assert_eq!(ex.len(), 2);
    assert_eq!(ex[0], (vec!["a".to_string(), "b c".to_string()], "line\n".to_string(), 1));
    assert_eq!(ex[1].1, "");
}
