//! Expression grammar shared by tower declarations, derivation values,
//! functional equations and session scripts.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := base ("^" exponent)?
//! exponent := "-"? integer ("^" exponent)?
//! base   := integer | symbol | symbol "(" expr ")" | "(" expr ")"
//! ```
//!
//! `^` binds tighter than unary minus, so `-t^2` is `-(t^2)`. Exponents are
//! integer literals; a chain `t^2^3` folds right-associatively to `t^8`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    /// Non-negative integer literal.
    Num(BigInt),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Apply(String, Box<Expr>),
}

impl Expr {
    pub fn num(n: i64) -> Expr {
        if n < 0 {
            Expr::Neg(Box::new(Expr::Num(BigInt::from(-n))))
        } else {
            Expr::Num(BigInt::from(n))
        }
    }

    pub fn sym(s: &str) -> Expr {
        Expr::Sym(s.to_string())
    }

    pub fn apply(f: &str, arg: Expr) -> Expr {
        Expr::Apply(f.to_string(), Box::new(arg))
    }

    /// Symbols occurring outside function-name position.
    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |e| {
            if let Expr::Sym(s) = e {
                out.insert(s.clone());
            }
        });
        out
    }

    /// Names used in function-application position.
    pub fn functions(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |e| {
            if let Expr::Apply(f, _) = e {
                out.insert(f.clone());
            }
        });
        out
    }

    pub fn walk(&self, f: &mut dyn FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Num(_) | Expr::Sym(_) => {}
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Apply(_, a) => a.walk(f),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.walk(f);
                b.walk(f);
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(_) | Expr::Sym(_) | Expr::Apply(..) => 5,
        }
    }

    fn write(&self, out: &mut String, min: u8) {
        let p = self.prec();
        let paren = p < min;
        if paren {
            out.push('(');
        }
        match self {
            Expr::Num(n) => out.push_str(&n.to_string()),
            Expr::Sym(s) => out.push_str(s),
            Expr::Neg(a) => {
                out.push('-');
                a.write(out, 3);
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(out, 1);
                out.push_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " });
                b.write(out, 2);
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.write(out, 2);
                out.push(if matches!(self, Expr::Mul(..)) { '*' } else { '/' });
                b.write(out, 3);
            }
            Expr::Pow(a, e) => {
                a.write(out, 5);
                out.push('^');
                out.push_str(&e.to_string());
            }
            Expr::Apply(f, a) => {
                out.push_str(f);
                out.push('(');
                a.write(out, 0);
                out.push(')');
            }
        }
        if paren {
            out.push(')');
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, 0);
        f.write_str(&s)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Int(s.parse().unwrap()), line: l0, col: c0 });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Ident(s), line: l0, col: c0 });
            continue;
        }
        if "+-*/^()=".contains(c) {
            out.push(Token { tok: Tok::Op(c), line: l0, col: c0 });
            i += 1;
            col += 1;
            continue;
        }
        return Err(Error::Syntax { line, col, msg: format!("unknown token `{c}`") });
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, msg: &str) -> Result<T> {
        let found = match &t.tok {
            Tok::Int(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Op(c) => format!("`{c}`"),
            Tok::Eof => "end of input".to_string(),
        };
        Err(Error::Syntax { line: t.line, col: t.col, msg: format!("{msg}, found {found}") })
    }

    fn is_op(&self, c: char) -> bool {
        self.peek().tok == Tok::Op(c)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.is_op('+') {
                self.next();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.is_op('-') {
                self.next();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.is_op('*') {
                self.next();
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.is_op('/') {
                self.next();
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.is_op('-') {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.is_op('^') {
            self.next();
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let neg = if self.is_op('-') {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        let Tok::Int(n) = &t.tok else {
            return self.err(&t, "expected integer exponent");
        };
        let mut v: i64 = i64::try_from(n.clone())
            .or_else(|_| self.err(&t, "exponent too large"))?;
        if self.is_op('^') {
            self.next();
            let inner = self.exponent()?;
            let inner = u32::try_from(inner).or_else(|_| self.err(&t, "exponent must be a non-negative integer"))?;
            v = v.checked_pow(inner).map_or_else(|| self.err(&t, "exponent too large"), Ok)?;
        }
        Ok(if neg { -v } else { v })
    }

    fn base(&mut self) -> Result<Expr> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(Expr::Num(n)),
            Tok::Ident(name) => {
                if self.is_op('(') {
                    self.next();
                    let arg = self.expr()?;
                    self.expect(')')?;
                    Ok(Expr::Apply(name, Box::new(arg)))
                } else {
                    Ok(Expr::Sym(name))
                }
            }
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.err(&t, "expected a number, symbol or `(`"),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Op(c) {
            Ok(())
        } else {
            self.err(&t, &format!("expected `{c}`"))
        }
    }

    fn end(&mut self) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Eof {
            Ok(())
        } else {
            self.err(&t, "unexpected trailing input")
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let e = p.expr()?;
    p.end()?;
    Ok(e)
}

/// Parses `lhs = rhs`.
pub fn parse_equation(text: &str) -> Result<(Expr, Expr)> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let lhs = p.expr()?;
    p.expect('=')?;
    let rhs = p.expr()?;
    p.end()?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn grammar_examples() {
        let e = parse_expr("t^3 + 2*t").unwrap();
        assert_eq!(
            e,
            Expr::Add(b(Expr::Pow(b(Expr::sym("t")), 3)), b(Expr::Mul(b(Expr::num(2)), b(Expr::sym("t")))))
        );
        let e = parse_expr("d(1/t)").unwrap();
        assert_eq!(e, Expr::apply("d", Expr::Div(b(Expr::num(1)), b(Expr::sym("t")))));
        match parse_expr("t^^2") {
            Err(Error::Syntax { line: 1, col: 3, .. }) => {}
            other => panic!("expected syntax error at column 3, got {other:?}"),
        }
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_expr("-t^2").unwrap(), Expr::Neg(b(Expr::Pow(b(Expr::sym("t")), 2))));
        assert_eq!(parse_expr("t^2^3").unwrap(), Expr::Pow(b(Expr::sym("t")), 8));
        assert_eq!(parse_expr("t^-1").unwrap(), Expr::Pow(b(Expr::sym("t")), -1));
        assert_eq!(parse_expr("a - b - c").unwrap().to_string(), "a - b - c");
        assert_eq!(parse_expr("a - (b - c)").unwrap().to_string(), "a - (b - c)");
        assert_eq!(parse_expr("(a/b)/c").unwrap().to_string(), "a/b/c");
        assert_eq!(parse_expr("a/(b*c)").unwrap().to_string(), "a/(b*c)");
    }

    #[test]
    fn error_positions() {
        assert!(matches!(parse_expr("1 + $"), Err(Error::Syntax { col: 5, .. })));
        assert!(matches!(parse_expr("(t"), Err(Error::Syntax { col: 3, .. })));
        assert!(matches!(parse_expr("t\n+ )"), Err(Error::Syntax { line: 2, col: 3, .. })));
    }

    #[test]
    fn equations() {
        let (l, r) = parse_equation("f(x+y) = f(x) + f(y)").unwrap();
        assert_eq!(l.functions().into_iter().collect::<Vec<_>>(), vec!["f".to_string()]);
        assert_eq!(r.symbols().len(), 2);
        assert!(parse_equation("f(x)").is_err());
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0u32..20).prop_map(|n| Expr::Num(n.into())),
            prop::sample::select(vec!["t", "s", "x", "y"]).prop_map(Expr::sym),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                (inner.clone(), inner.clone()).prop_map(|(a, c)| Expr::Add(Box::new(a), Box::new(c))),
                (inner.clone(), inner.clone()).prop_map(|(a, c)| Expr::Sub(Box::new(a), Box::new(c))),
                (inner.clone(), inner.clone()).prop_map(|(a, c)| Expr::Mul(Box::new(a), Box::new(c))),
                (inner.clone(), inner.clone()).prop_map(|(a, c)| Expr::Div(Box::new(a), Box::new(c))),
                (inner.clone(), -3i64..6).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
                inner.prop_map(|a| Expr::apply("d", a)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn print_parse_roundtrip(e in arb_expr()) {
            let printed = e.to_string();
            prop_assert_eq!(parse_expr(&printed).unwrap(), e, "printed as {}", printed);
        }
    }
}
