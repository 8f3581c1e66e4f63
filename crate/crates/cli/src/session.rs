//! Session scripts.
//!
//! ```text
//! # comments start with '#'
//! [tower]
//! t: trans
//! s: alg s^2 - t
//!
//! [derivation d]
//! d(t) = 1
//! slope = 0
//!
//! [check]
//! eval d(1/t)
//! assert d(s^2) == d(t)
//! residual leibniz d x=t y=s
//! cocycle verify --carrier gf:5 --fn f=x^2
//! ```
//!
//! Scripts are parsed completely before anything runs. Statements then run
//! in order; the first failed assertion or check stops the run with exit
//! code 1, and errors stop it with the code of the underlying error.

use std::collections::HashMap;

use dercalc_core::algebra::parse_q;
use dercalc_core::derivation::Derivation;
use dercalc_core::tower::adjoin_decl;
use dercalc_core::{FieldTower, Q};

use crate::cmd::der::{eval, residual, Setup};
use crate::{execute, CliError, Format, Out, ResidualKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Generator(String),
    DerValue { der: String, generator: String, value: String },
    Slope { der: String, value: String },
    Eval(String),
    Assert { lhs: String, rhs: String },
    Residual { kind: String, ders: Vec<String>, args: Vec<(String, String)> },
    /// A dercalc command line, with its source text for the transcript.
    Command(Vec<String>, String),
    /// Opens a derivation, which is zero until values are given.
    Declare(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub line: usize,
    pub stmt: Stmt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

enum Section {
    None,
    Tower,
    Derivation(String),
    Check,
}

const COMMANDS: [&str; 7] = ["tower", "der", "hod", "cocycle", "char", "multi", "feq"];

pub fn parse_session(text: &str) -> Result<Vec<Located>, ParseError> {
    let mut section = Section::None;
    let mut out = vec![];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |m: String| ParseError { line, message: m };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(h) = body.strip_prefix('[') {
            let h = h.strip_suffix(']').ok_or_else(|| err(format!("unterminated section header `{body}`")))?.trim();
            section = match h.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["tower"] => Section::Tower,
                ["check"] => Section::Check,
                ["derivation", name] => {
                    out.push(Located { line, stmt: Stmt::Declare(name.to_string()) });
                    Section::Derivation(name.to_string())
                }
                _ => return Err(err(format!("unknown section `[{h}]`"))),
            };
            continue;
        }
        let stmt = match &section {
            Section::None => return Err(err("statement outside a section".into())),
            Section::Tower => Stmt::Generator(body.to_string()),
            Section::Derivation(der) => {
                let (l, r) = body.split_once('=').ok_or_else(|| err(format!("expected `{der}(t) = value`")))?;
                let l = l.trim();
                if l == "slope" {
                    Stmt::Slope { der: der.clone(), value: r.trim().to_string() }
                } else {
                    let generator = match l.strip_suffix(')').and_then(|x| x.split_once('(')) {
                        Some((n, g)) if n.trim() == der => g.trim().to_string(),
                        Some((n, _)) => return Err(err(format!("value for `{}` inside [derivation {der}]", n.trim()))),
                        None => l.to_string(),
                    };
                    Stmt::DerValue { der: der.clone(), generator, value: r.trim().to_string() }
                }
            }
            Section::Check => check_stmt(body).map_err(err)?,
        };
        out.push(Located { line, stmt });
    }
    Ok(out)
}

fn check_stmt(body: &str) -> Result<Stmt, String> {
    let (head, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
    let rest = rest.trim();
    Ok(match head {
        "eval" => Stmt::Eval(rest.to_string()),
        "assert" => {
            let (l, r) = rest.split_once("==").ok_or("expected `assert LHS == RHS`")?;
            Stmt::Assert { lhs: l.trim().to_string(), rhs: r.trim().to_string() }
        }
        "residual" => {
            let mut words = rest.split_whitespace();
            let kind = words.next().ok_or("expected `residual KIND DER key=value ...`")?.to_string();
            let (mut ders, mut args) = (vec![], vec![]);
            for w in words {
                match w.split_once('=') {
                    Some((k, v)) => args.push((k.to_string(), v.to_string())),
                    None => ders.push(w.to_string()),
                }
            }
            if ders.is_empty() {
                return Err("residual needs a derivation name".into());
            }
            Stmt::Residual { kind, ders, args }
        }
        h if COMMANDS.contains(&h) => {
            let words = shlex::split(body).ok_or_else(|| format!("unbalanced quotes in `{body}`"))?;
            Stmt::Command(words, body.to_string())
        }
        h => return Err(format!("unknown command `{h}`")),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub transcript: String,
    pub code: i32,
    /// The message for standard error when the run stopped early.
    pub error: Option<String>,
}

#[derive(Default)]
struct State {
    tower: FieldTower,
    /// Declared derivations in order, with their values and slope.
    ders: Vec<(String, Vec<(String, String)>, Q)>,
}

impl State {
    fn der_slot(&mut self, name: &str) -> &mut (String, Vec<(String, String)>, Q) {
        if let Some(i) = self.ders.iter().position(|d| d.0 == name) {
            return &mut self.ders[i];
        }
        self.ders.push((name.to_string(), vec![], Q::from_integer(0.into())));
        self.ders.last_mut().unwrap()
    }

    fn built(&self) -> Result<Vec<(String, Derivation)>, CliError> {
        self.ders
            .iter()
            .map(|(n, vals, _)| {
                let pairs: Vec<(&str, &str)> = vals.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                Ok((n.clone(), Derivation::define_str(&self.tower, &pairs)?))
            })
            .collect()
    }
}

fn residual_kind(kind: &str, args: &HashMap<String, String>) -> Result<ResidualKind, CliError> {
    let get = |k: &str| args.get(k).cloned().ok_or_else(|| CliError::Usage(format!("residual {kind} needs {k}=...")));
    let int = |k: &str| -> Result<i64, CliError> {
        get(k)?.parse().map_err(|_| CliError::Usage(format!("{k} must be an integer")))
    };
    Ok(match kind {
        "leibniz" => ResidualKind::Leibniz { x: get("x")?, y: get("y")? },
        "power" => ResidualKind::Power { k: int("k")?, x: get("x")? },
        "monomial" => ResidualKind::Monomial {
            n: int("n")?,
            m: int("m")?,
            x: get("x")?,
            slope_g: args.get("slope_g").cloned().unwrap_or_else(|| "0".into()),
        },
        "mobius" => ResidualKind::Mobius { coeffs: get("coeffs")?, n: int("n")?, x: get("x")? },
        "reflect" => ResidualKind::Reflect { x: get("x")? },
        "square" => ResidualKind::Square { x: get("x")? },
        "nhom" => ResidualKind::Nhom { n: int("n")?, x: get("x")? },
        k => return Err(CliError::Usage(format!("unknown residual `{k}`"))),
    })
}

/// Runs one statement; `Ok(false)` means a check failed.
fn step(st: &mut State, stmt: &Stmt, out: &mut Out) -> Result<bool, CliError> {
    match stmt {
        Stmt::Generator(decl) => {
            st.tower = adjoin_decl(&st.tower, decl)?;
            Ok(true)
        }
        Stmt::DerValue { der, generator, value } => {
            st.der_slot(der).1.push((generator.clone(), value.clone()));
            Ok(true)
        }
        Stmt::Slope { der, value } => {
            st.der_slot(der).2 = parse_q(value)?;
            Ok(true)
        }
        Stmt::Eval(e) => {
            let ders = st.built()?;
            let v = eval(&st.tower, &ders, e)?.to_string();
            out.emit("value", &[("expr", e.clone()), ("value", v.clone())], format!("{e} = {v}"));
            Ok(true)
        }
        Stmt::Assert { lhs, rhs } => {
            let ders = st.built()?;
            let l = eval(&st.tower, &ders, lhs)?;
            let r = eval(&st.tower, &ders, rhs)?;
            let ok = l == r;
            let text = if ok {
                format!("assert {lhs} == {rhs}: ok")
            } else {
                format!("assert {lhs} == {rhs}: FAIL ({l} != {r})")
            };
            let mut fields = vec![("lhs", lhs.clone()), ("rhs", rhs.clone()), ("ok", ok.to_string())];
            // rendering can cost more than the check itself, so text mode skips it
            if out.format != Format::Text {
                fields.extend([("left", l.to_string()), ("right", r.to_string())]);
            }
            out.emit("assert", &fields, text);
            Ok(ok)
        }
        Stmt::Residual { kind, ders: names, args } => {
            let all = st.built()?;
            let mut picked = vec![];
            for n in names {
                let d = all
                    .iter()
                    .find(|d| &d.0 == n)
                    .ok_or_else(|| CliError::Usage(format!("no derivation named `{n}` declared so far")))?;
                picked.push(d.clone());
            }
            let slope = st.ders.iter().find(|d| d.0 == names[0]).map_or_else(|| Q::from_integer(0.into()), |d| d.2.clone());
            let args: HashMap<String, String> = args.iter().cloned().collect();
            let kind = residual_kind(kind, &args)?;
            let setup = Setup { tower: st.tower.clone(), ders: picked, slope };
            let (label, v) = residual(&setup, &kind)?;
            let zero = v.is_zero();
            out.emit(
                "residual",
                &[("residual", label.clone()), ("value", v.to_string()), ("zero", zero.to_string())],
                format!("{label} = {v}"),
            );
            Ok(true)
        }
        Stmt::Declare(der) => {
            st.der_slot(der);
            Ok(true)
        }
        Stmt::Command(words, text) => {
            let mut argv = vec!["dercalc".to_string()];
            if out.format == Format::Records && !words.iter().any(|w| w.starts_with("--format")) {
                argv.push("--format".into());
                argv.push("records".into());
            }
            argv.extend(words.iter().cloned());
            out.note(format!("> {text}"));
            let r = execute(&argv);
            out.raw(&r.stdout);
            match r.code {
                0 => Ok(true),
                1 if r.stderr.is_empty() => Ok(false),
                c => Err(CliError::Command { code: c, message: r.stderr.trim_end().trim_start_matches("error: ").to_string() }),
            }
        }
    }
}

pub fn run_session(text: &str, format: Format) -> Transcript {
    let mut out = Out::new(format);
    let stmts = match parse_session(text) {
        Ok(s) => s,
        Err(e) => return Transcript { transcript: String::new(), code: 2, error: Some(format!("error: {e}")) },
    };
    let mut st = State::default();
    for s in &stmts {
        match step(&mut st, &s.stmt, &mut out) {
            Ok(true) => {}
            Ok(false) => {
                return Transcript {
                    transcript: out.take(),
                    code: 1,
                    error: Some(format!("error: line {}: check failed", s.line)),
                }
            }
            Err(e) => {
                return Transcript {
                    transcript: out.take(),
                    code: e.exit_code(),
                    error: Some(format!("error: line {}: {e}", s.line)),
                }
            }
        }
    }
    Transcript { transcript: out.take(), code: 0, error: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_script() {
        let t = run_session("", Format::Text);
        assert_eq!(t, Transcript { transcript: String::new(), code: 0, error: None });
        let t = run_session("# only a comment\n\n", Format::Text);
        assert_eq!(t.code, 0);
        assert!(t.transcript.is_empty());
    }

    #[test]
    fn quotient_rule_session() {
        let s = "[tower]\nt: trans\n[derivation d]\nd(t) = 1\n[check]\neval d(1/t)\n";
        let t = run_session(s, Format::Text);
        assert_eq!(t.transcript, "d(1/t) = -1/t^2\n");
        assert_eq!(t.code, 0);
    }

    #[test]
    fn parse_positions() {
        let e = parse_session("[tower]\nt: trans\n[bogus]\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_session("eval t\n").unwrap_err();
        assert_eq!(e.to_string(), "line 1: statement outside a section");
        let e = parse_session("[check]\nfrobnicate\n").unwrap_err();
        assert_eq!(e.line, 2);
        let line = "cocycle verify --carrier gf:5 --fn 'f=x^2'";
        let ok = parse_session(&format!("[check]\n{line}\n")).unwrap();
        let words = ["cocycle", "verify", "--carrier", "gf:5", "--fn", "f=x^2"].map(String::from).to_vec();
        assert_eq!(ok[0].stmt, Stmt::Command(words, line.into()));
    }

    #[test]
    fn failures_stop_the_run() {
        let s = "[tower]\nt: trans\n[derivation d]\nd(t) = 1\n[check]\nassert d(t^2) == t\neval t\n";
        let t = run_session(s, Format::Text);
        assert_eq!(t.code, 1);
        assert_eq!(t.transcript, "assert d(t^2) == t: FAIL (2*t != t)\n");
        let s = "[check]\ncocycle verify --carrier gf:5 --F 'a' --axioms alpha\neval 1\n";
        let t = run_session(s, Format::Text);
        assert_eq!(t.code, 1);
        assert!(t.transcript.contains("FAIL at"));
        let t = run_session("[tower]\nt: bogus\n", Format::Text);
        assert_eq!(t.code, 2);
    }
}
