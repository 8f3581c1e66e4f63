//! Cauchy and Leibniz differences and the cocycle axioms they satisfy.
//!
//! For `f` on a ring, `F(a,b) = f(a+b) - f(a) - f(b)` and
//! `G(a,b) = f(ab) - a f(b) - b f(a)`. The axioms checked are
//!
//! - alpha: `F(a,b) = F(b,a)`
//! - beta: `F(a+b,c) + F(a,b) = F(a,b+c) + F(b,c)`
//! - gamma: `G(a,b) = G(b,a)`
//! - delta: `c G(a,b) + G(ab,c) = a G(b,c) + G(a,bc)`
//! - epsilon: `F(ac,bc) - c F(a,b) = G(a+b,c) - G(a,c) - G(b,c)`
//! - zeta: `sum_{i=1..p} F(1, i) = 0` in characteristic `p > 0`
//! - eta: `F(ac,bc) = c F(a,b)`

mod char;
mod extend;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::{apply1, apply2, BinaryFn, Domain, UnaryFn};
use crate::error::{Error, Result};

pub use char::{alien_check, char_decompose, AlienReport, Decomposition};
pub use extend::{
    cocycle_extend_positive, cocycle_primitive, extend_f, extend_g, Extension, GZeroRule,
};

/// A two-argument map on a domain.
#[derive(Clone)]
pub struct Cocycle2<D: Domain> {
    pub domain: D,
    pub map: BinaryFn<D::Elem>,
}

impl<D: Domain> Cocycle2<D> {
    pub fn new(domain: D, map: impl Fn(&D::Elem, &D::Elem) -> Option<D::Elem> + Send + Sync + 'static) -> Self {
        Cocycle2 { domain, map: Arc::new(map) }
    }

    /// `None` when an argument lies outside the domain or the map is undefined there.
    pub fn eval(&self, a: &D::Elem, b: &D::Elem) -> Option<D::Elem> {
        apply2(&self.domain, &self.map, a, b)
    }
}

impl<D: Domain> fmt::Debug for Cocycle2<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cocycle2 on {}", self.domain.describe())
    }
}

/// `F(a,b) = f(a+b) - f(a) - f(b)`.
pub fn cauchy_difference<D: Domain + 'static>(d: &D, f: UnaryFn<D::Elem>) -> Cocycle2<D> {
    let dd = d.clone();
    Cocycle2::new(d.clone(), move |a, b| {
        let s = dd.add(a, b);
        let v = apply1(&dd, &f, &s)?;
        Some(dd.sub(&dd.sub(&v, &apply1(&dd, &f, a)?), &apply1(&dd, &f, b)?))
    })
}

/// `G(a,b) = f(ab) - a f(b) - b f(a)`.
pub fn leibniz_difference<D: Domain + 'static>(d: &D, f: UnaryFn<D::Elem>) -> Cocycle2<D> {
    let dd = d.clone();
    Cocycle2::new(d.clone(), move |a, b| {
        let p = dd.mul(a, b);
        let v = apply1(&dd, &f, &p)?;
        let x = dd.mul(a, &apply1(&dd, &f, b)?);
        let y = dd.mul(b, &apply1(&dd, &f, a)?);
        Some(dd.sub(&dd.sub(&v, &x), &y))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Epsilon,
    Zeta,
    Eta,
}

impl Axiom {
    pub const ALL: [Axiom; 7] =
        [Axiom::Alpha, Axiom::Beta, Axiom::Gamma, Axiom::Delta, Axiom::Epsilon, Axiom::Zeta, Axiom::Eta];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Alpha => "alpha",
            Axiom::Beta => "beta",
            Axiom::Gamma => "gamma",
            Axiom::Delta => "delta",
            Axiom::Epsilon => "epsilon",
            Axiom::Zeta => "zeta",
            Axiom::Eta => "eta",
        }
    }

    fn needs_f(self) -> bool {
        matches!(self, Axiom::Alpha | Axiom::Beta | Axiom::Epsilon | Axiom::Zeta | Axiom::Eta)
    }

    fn needs_g(self) -> bool {
        matches!(self, Axiom::Gamma | Axiom::Delta | Axiom::Epsilon)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "alpha" | "α" => Axiom::Alpha,
            "beta" | "β" => Axiom::Beta,
            "gamma" | "γ" => Axiom::Gamma,
            "delta" | "δ" => Axiom::Delta,
            "epsilon" | "ε" => Axiom::Epsilon,
            "zeta" | "ζ" => Axiom::Zeta,
            "eta" | "η" => Axiom::Eta,
            other => return Err(Error::Parse(format!("unknown axiom `{other}`"))),
        })
    }
}

/// Parses a comma-separated axiom list; `all` selects every axiom.
pub fn parse_axioms(s: &str) -> Result<Vec<Axiom>> {
    if s.trim() == "all" {
        return Ok(Axiom::ALL.to_vec());
    }
    s.split(',').filter(|p| !p.trim().is_empty()).map(str::parse).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { n: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<E> {
    Pass { checked: u64, skipped: u64 },
    Fail { witness: Vec<E>, lhs: E, rhs: E },
    Void(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult<E> {
    pub name: String,
    pub vars: &'static str,
    pub outcome: Outcome<E>,
}

impl<E> CheckResult<E> {
    pub fn passed(&self) -> bool {
        !matches!(self.outcome, Outcome::Fail { .. })
    }
}

impl<E: fmt::Display> fmt::Display for CheckResult<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass { checked, skipped: 0 } => write!(f, "{}: pass ({checked} checked)", self.name),
            Outcome::Pass { checked, skipped } => {
                write!(f, "{}: pass ({checked} checked, {skipped} skipped)", self.name)
            }
            Outcome::Fail { witness, lhs, rhs } => {
                let w: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
                write!(f, "{}: FAIL at ({}) = ({}): {lhs} != {rhs}", self.name, self.vars, w.join(", "))
            }
            Outcome::Void(why) => write!(f, "{}: void ({why})", self.name),
        }
    }
}

/// Per-check results in the order requested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report<E>(pub Vec<CheckResult<E>>);

impl<E> Report<E> {
    pub fn passed(&self) -> bool {
        self.0.iter().all(CheckResult::passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult<E>> {
        self.0.iter().find(|c| c.name == name)
    }
}

impl<E: fmt::Display> fmt::Display for Report<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Runs `check` over all `arity`-tuples of points (or a seeded random
/// sample). `check` returns `None` when the tuple escapes the domain.
pub(crate) fn run_check<D: Domain>(
    d: &D,
    arity: usize,
    mode: Mode,
    budget: u64,
    check: &dyn Fn(&[D::Elem]) -> Option<(D::Elem, D::Elem)>,
) -> Result<Outcome<D::Elem>> {
    let pts = d.points();
    let (mut checked, mut skipped) = (0u64, 0u64);
    let mut visit = |t: &[D::Elem]| -> Option<Outcome<D::Elem>> {
        match check(t) {
            None => skipped += 1,
            Some((l, r)) if l == r => checked += 1,
            Some((lhs, rhs)) => return Some(Outcome::Fail { witness: t.to_vec(), lhs, rhs }),
        }
        None
    };
    match mode {
        Mode::Exhaustive => {
            let total = (pts.len() as u128).pow(arity as u32);
            if total > budget as u128 {
                return Err(Error::BudgetExceeded { needed: total, budget });
            }
            if pts.is_empty() {
                return Ok(Outcome::Pass { checked: 0, skipped: 0 });
            }
            let mut idx = vec![0usize; arity];
            loop {
                let t: Vec<D::Elem> = idx.iter().map(|&i| pts[i].clone()).collect();
                if let Some(fail) = visit(&t) {
                    return Ok(fail);
                }
                // odometer, last position fastest
                let mut k = arity;
                loop {
                    if k == 0 {
                        return Ok(Outcome::Pass { checked, skipped });
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < pts.len() {
                        break;
                    }
                    idx[k] = 0;
                }
            }
        }
        Mode::Sampled { n, seed } => {
            if n as u64 > budget {
                return Err(Error::BudgetExceeded { needed: n as u128, budget });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..n {
                if pts.is_empty() {
                    break;
                }
                let t: Vec<D::Elem> = (0..arity).map(|_| pts[rng.gen_range(0..pts.len())].clone()).collect();
                if let Some(fail) = visit(&t) {
                    return Ok(fail);
                }
            }
            Ok(Outcome::Pass { checked, skipped })
        }
    }
}

/// Checks the requested axioms for `F` and/or `G` on their common domain.
pub fn cocycle_verify<D: Domain>(
    f: Option<&Cocycle2<D>>,
    g: Option<&Cocycle2<D>>,
    axioms: &[Axiom],
    mode: Mode,
    budget: u64,
) -> Result<Report<D::Elem>> {
    let d = match (f, g) {
        (Some(f), _) => f.domain.clone(),
        (None, Some(g)) => g.domain.clone(),
        (None, None) => return Err(Error::InvalidArgument("nothing to verify".into())),
    };
    let mut out = vec![];
    for &ax in axioms {
        if ax.needs_f() && f.is_none() {
            return Err(Error::AxiomMismatch { axiom: ax.to_string(), reason: "requires F".into() });
        }
        if ax.needs_g() && g.is_none() {
            return Err(Error::AxiomMismatch { axiom: ax.to_string(), reason: "requires G".into() });
        }
        let ff = |a: &D::Elem, b: &D::Elem| f.unwrap().eval(a, b);
        let gg = |a: &D::Elem, b: &D::Elem| g.unwrap().eval(a, b);
        let (vars, outcome) = match ax {
            Axiom::Alpha => ("a, b", run_check(&d, 2, mode, budget, &|t| Some((ff(&t[0], &t[1])?, ff(&t[1], &t[0])?)))?),
            Axiom::Gamma => ("a, b", run_check(&d, 2, mode, budget, &|t| Some((gg(&t[0], &t[1])?, gg(&t[1], &t[0])?)))?),
            Axiom::Beta => (
                "a, b, c",
                run_check(&d, 3, mode, budget, &|t| {
                    let (a, b, c) = (&t[0], &t[1], &t[2]);
                    let l = d.add(&ff(&d.add(a, b), c)?, &ff(a, b)?);
                    let r = d.add(&ff(a, &d.add(b, c))?, &ff(b, c)?);
                    Some((l, r))
                })?,
            ),
            Axiom::Delta => (
                "a, b, c",
                run_check(&d, 3, mode, budget, &|t| {
                    let (a, b, c) = (&t[0], &t[1], &t[2]);
                    let l = d.add(&d.mul(c, &gg(a, b)?), &gg(&d.mul(a, b), c)?);
                    let r = d.add(&d.mul(a, &gg(b, c)?), &gg(a, &d.mul(b, c))?);
                    Some((l, r))
                })?,
            ),
            Axiom::Epsilon => (
                "a, b, c",
                run_check(&d, 3, mode, budget, &|t| {
                    let (a, b, c) = (&t[0], &t[1], &t[2]);
                    let l = d.sub(&ff(&d.mul(a, c), &d.mul(b, c))?, &d.mul(c, &ff(a, b)?));
                    let r = d.sub(&d.sub(&gg(&d.add(a, b), c)?, &gg(a, c)?), &gg(b, c)?);
                    Some((l, r))
                })?,
            ),
            Axiom::Eta => (
                "a, b, c",
                run_check(&d, 3, mode, budget, &|t| {
                    let (a, b, c) = (&t[0], &t[1], &t[2]);
                    Some((ff(&d.mul(a, c), &d.mul(b, c))?, d.mul(c, &ff(a, b)?)))
                })?,
            ),
            Axiom::Zeta => ("", zeta(&d, f.unwrap())),
        };
        out.push(CheckResult { name: ax.to_string(), vars, outcome });
    }
    Ok(Report(out))
}

fn zeta<D: Domain>(d: &D, f: &Cocycle2<D>) -> Outcome<D::Elem> {
    let p = d.characteristic();
    if p == 0 {
        return Outcome::Void("characteristic 0".into());
    }
    let one = d.one();
    let mut sum = d.zero();
    for i in 1..=p {
        match f.eval(&one, &d.from_int(i as i64)) {
            Some(v) => sum = d.add(&sum, &v),
            None => return Outcome::Void("F undefined on some (1, i)".into()),
        }
    }
    if d.is_zero(&sum) {
        Outcome::Pass { checked: 1, skipped: 0 }
    } else {
        Outcome::Fail { witness: vec![], lhs: sum, rhs: d.zero() }
    }
}

/// Conditions under which `D` is the Leibniz difference of an additive map:
/// symmetry, `D(xy,z) + z D(x,y) = D(x,yz) + x D(y,z)`, and additivity in
/// the first argument.
pub fn leibniz_coboundary_check<D: Domain>(dmap: &Cocycle2<D>, mode: Mode, budget: u64) -> Result<Report<D::Elem>> {
    let d = &dmap.domain;
    let e = |a: &D::Elem, b: &D::Elem| dmap.eval(a, b);
    let sym = run_check(d, 2, mode, budget, &|t| Some((e(&t[0], &t[1])?, e(&t[1], &t[0])?)))?;
    let coc = run_check(d, 3, mode, budget, &|t| {
        let (x, y, z) = (&t[0], &t[1], &t[2]);
        let l = d.add(&e(&d.mul(x, y), z)?, &d.mul(z, &e(x, y)?));
        let r = d.add(&e(x, &d.mul(y, z))?, &d.mul(x, &e(y, z)?));
        Some((l, r))
    })?;
    let add = run_check(d, 3, mode, budget, &|t| {
        let (x, y, z) = (&t[0], &t[1], &t[2]);
        Some((e(&d.add(x, y), z)?, d.add(&e(x, z)?, &e(y, z)?)))
    })?;
    Ok(Report(vec![
        CheckResult { name: "symmetry".into(), vars: "x, y", outcome: sym },
        CheckResult { name: "cocycle".into(), vars: "x, y, z", outcome: coc },
        CheckResult { name: "additivity".into(), vars: "x, y, z", outcome: add },
    ]))
}
