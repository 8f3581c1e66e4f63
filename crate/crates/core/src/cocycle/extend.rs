//! Extension of cocycles from the positive integers to all of Z, and
//! reconstruction of a primitive `f` with `F = f(a+b) - f(a) - f(b)`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{cocycle_verify, Axiom, Cocycle2, Mode, Report};
use crate::algebra::Q;
use crate::domain::{sign, IntegerWindow};
use crate::error::{Error, Result};

/// Where the extended `G` is forced to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GZeroRule {
    /// Zero only when `a` or `b` is zero. This is the rule that makes the
    /// extended pair satisfy epsilon.
    AxesOnly,
    /// Also zero when `a + b = 0`, mirroring the rule for `F`. Kept for
    /// comparison: it breaks epsilon, e.g. for `f(x) = x^2` at `(2, 1, -3)`.
    WithAntidiagonal,
}

fn fail_msg<E: std::fmt::Display>(what: &str, r: &Report<E>) -> String {
    let bad: Vec<String> = r.0.iter().filter(|c| !c.passed()).map(|c| c.to_string()).collect();
    format!("{what}: {}", bad.join("; "))
}

/// The sign-table extension of `F` from `1..=r` to `-r..=r`.
pub fn extend_f(f: &Cocycle2<IntegerWindow>, r: i64) -> Cocycle2<IntegerWindow> {
    let f = f.clone();
    Cocycle2::new(IntegerWindow::symmetric(r), move |a: &Q, b: &Q| {
        let s = a + b;
        let (sa, sb, ss) = (sign(a), sign(b), sign(&s));
        if sa == 0 || sb == 0 || ss == 0 {
            return Some(Q::zero());
        }
        Some(match (sa, sb, ss) {
            (1, 1, _) => f.eval(a, b)?,
            (1, -1, 1) => -f.eval(&s, &-b)?,
            (1, -1, -1) => f.eval(&-s, a)?,
            (-1, 1, 1) => -f.eval(&s, &-a)?,
            (-1, 1, -1) => f.eval(&-s, b)?,
            _ => -f.eval(&-a, &-b)?,
        })
    })
}

/// The sign-table extension of `G` from `1..=r` to `-r..=r`.
pub fn extend_g(g: &Cocycle2<IntegerWindow>, r: i64, rule: GZeroRule) -> Cocycle2<IntegerWindow> {
    let g = g.clone();
    Cocycle2::new(IntegerWindow::symmetric(r), move |a: &Q, b: &Q| {
        let (sa, sb) = (sign(a), sign(b));
        if sa == 0 || sb == 0 || (rule == GZeroRule::WithAntidiagonal && (a + b).is_zero()) {
            return Some(Q::zero());
        }
        Some(match (sa, sb) {
            (1, 1) => g.eval(a, b)?,
            (1, _) => -g.eval(a, &-b)?,
            (_, 1) => -g.eval(&-a, b)?,
            _ => g.eval(&-a, &-b)?,
        })
    })
}

pub struct Extension {
    pub f: Cocycle2<IntegerWindow>,
    pub g: Option<Cocycle2<IntegerWindow>>,
    /// Axioms re-verified on the extended window.
    pub report: Report<Q>,
}

/// Extends `F` (and optionally `G`) given on the window `1..=r`. The inputs
/// are checked on the positive window first, the outputs on `-r..=r`.
pub fn cocycle_extend_positive(
    f: &Cocycle2<IntegerWindow>,
    g: Option<&Cocycle2<IntegerWindow>>,
    budget: u64,
) -> Result<Extension> {
    let w = &f.domain;
    if w.lo != 1 {
        return Err(Error::InvalidArgument("F must be given on a window 1..=r".into()));
    }
    let r = w.hi;
    let axioms: &[Axiom] = if g.is_some() {
        &[Axiom::Alpha, Axiom::Beta, Axiom::Gamma, Axiom::Delta, Axiom::Epsilon]
    } else {
        &[Axiom::Alpha, Axiom::Beta]
    };
    let pre = cocycle_verify(Some(f), g, axioms, Mode::Exhaustive, budget)?;
    if !pre.passed() {
        return Err(Error::VerificationFailed(fail_msg("input on the positive window", &pre)));
    }
    let fe = extend_f(f, r);
    let ge = g.map(|g| extend_g(g, r, GZeroRule::AxesOnly));
    let report = cocycle_verify(Some(&fe), ge.as_ref(), axioms, Mode::Exhaustive, budget)?;
    if !report.passed() {
        return Err(Error::VerificationFailed(fail_msg("extension", &report)));
    }
    Ok(Extension { f: fe, g: ge, report })
}

/// Reconstructs `f` on the window from `F` and a chosen `f(1)`:
/// `f(0) = -F(0,0)`, `f(k+1) = f(k) + f(1) + F(k,1)` upwards and the same
/// relation solved for `f(k)` downwards. The result is checked against `F`
/// on every pair whose sum stays in the window.
pub fn cocycle_primitive(f: &Cocycle2<IntegerWindow>, f1: &Q) -> Result<BTreeMap<i64, Q>> {
    let w = &f.domain;
    if !(w.lo <= 0 && w.hi >= 1) {
        return Err(Error::InvalidArgument("window must contain 0 and 1".into()));
    }
    let at = |k: i64| Q::from_integer(k.into());
    let ev = |a: i64, b: i64| -> Result<Q> {
        f.eval(&at(a), &at(b))
            .ok_or_else(|| Error::VerificationFailed(format!("F undefined at ({a}, {b})")))
    };
    let mut t = BTreeMap::new();
    t.insert(0, -ev(0, 0)?);
    t.insert(1, f1.clone());
    for k in 1..w.hi {
        let v = &t[&k] + f1 + ev(k, 1)?;
        t.insert(k + 1, v);
    }
    for k in (w.lo..0).rev() {
        let v = &t[&(k + 1)] - f1 - ev(k, 1)?;
        t.insert(k, v);
    }
    for a in w.lo..=w.hi {
        for b in w.lo..=w.hi {
            let s = a + b;
            if s < w.lo || s > w.hi {
                continue;
            }
            let got = &t[&s] - &t[&a] - &t[&b];
            let want = ev(a, b)?;
            if got != want {
                return Err(Error::VerificationFailed(format!(
                    "F is not a coboundary on this window: at ({a}, {b}) the primitive gives {got}, F gives {want}"
                )));
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};
    use crate::cocycle::{cauchy_difference, leibniz_difference, Outcome};
    use std::sync::Arc;

    const B: u64 = 10_000_000;

    fn product(r: i64) -> Cocycle2<IntegerWindow> {
        Cocycle2::new(IntegerWindow::new(1, r), |a: &Q, b: &Q| Some(a * b))
    }

    #[test]
    fn extension_examples() {
        let ext = cocycle_extend_positive(&product(8), None, B).unwrap();
        assert_eq!(ext.f.eval(&qi(3), &qi(-1)), Some(qi(-2)));
        assert_eq!(ext.f.eval(&qi(5), &qi(0)), Some(qi(0)));
        assert_eq!(ext.f.eval(&qi(-2), &qi(-3)), Some(qi(-6)));
        assert!(ext.report.passed());
    }

    #[test]
    fn extension_rejects_non_cocycle() {
        let bad = Cocycle2::new(IntegerWindow::new(1, 6), |a: &Q, _: &Q| Some(a.clone()));
        assert!(matches!(cocycle_extend_positive(&bad, None, B), Err(Error::VerificationFailed(_))));
    }

    #[test]
    fn pair_extension_and_antidiagonal_rule() {
        let r = 9;
        let pos = IntegerWindow::new(1, r);
        let sq: crate::domain::UnaryFn<Q> = Arc::new(|x: &Q| Some(x * x));
        let f = cauchy_difference(&pos, sq.clone());
        let g = leibniz_difference(&pos, sq);
        let ext = cocycle_extend_positive(&f, Some(&g), B).unwrap();
        assert!(ext.report.passed());
        let ge = ext.g.as_ref().unwrap();
        assert_eq!(ge.eval(&qi(3), &qi(-3)), Some(qi(-27)));

        let literal = extend_g(&g, r, GZeroRule::WithAntidiagonal);
        let rep = cocycle_verify(Some(&ext.f), Some(&literal), &[Axiom::Epsilon], Mode::Exhaustive, B).unwrap();
        assert!(!rep.passed());
        // the specific triple (2, 1, -3)
        let (a, b, c) = (qi(2), qi(1), qi(-3));
        let lhs = ext.f.eval(&(&a * &c), &(&b * &c)).unwrap() - &c * ext.f.eval(&a, &b).unwrap();
        let rhs_ok = ge.eval(&(&a + &b), &c).unwrap() - ge.eval(&a, &c).unwrap() - ge.eval(&b, &c).unwrap();
        let rhs_lit =
            literal.eval(&(&a + &b), &c).unwrap() - literal.eval(&a, &c).unwrap() - literal.eval(&b, &c).unwrap();
        assert_eq!(lhs, rhs_ok);
        assert_ne!(lhs, rhs_lit);
        if let Outcome::Fail { witness, .. } = &rep.0[0].outcome {
            assert_eq!(witness.len(), 3);
        }
    }

    #[test]
    fn primitive_examples() {
        let w = IntegerWindow::symmetric(8);
        let prod = Cocycle2::new(w.clone(), |a: &Q, b: &Q| Some(a * b));
        let t = cocycle_primitive(&prod, &qi(0)).unwrap();
        for n in -8..=8i64 {
            assert_eq!(t[&n], q(n * (n - 1), 2));
        }
        assert_eq!(t[&3], qi(3));

        let zero = Cocycle2::new(w.clone(), |_: &Q, _: &Q| Some(Q::zero()));
        let t = cocycle_primitive(&zero, &q(2, 7)).unwrap();
        assert_eq!(t[&-5], q(-10, 7));

        let one = Cocycle2::new(w.clone(), |_: &Q, _: &Q| Some(qi(1)));
        let t = cocycle_primitive(&one, &qi(3)).unwrap();
        let re = cauchy_difference(&w, Arc::new(move |x: &Q| t.get(&IntegerWindow::as_int(x)?).cloned()));
        assert_eq!(re.eval(&qi(-4), &qi(6)), Some(qi(1)));

        let asym = Cocycle2::new(w, |a: &Q, _: &Q| Some(a.clone()));
        assert!(matches!(cocycle_primitive(&asym, &qi(0)), Err(Error::VerificationFailed(_))));
    }
}
