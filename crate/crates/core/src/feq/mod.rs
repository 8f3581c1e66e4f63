//! Two-variable functional equations: pointwise checking on a domain and
//! brute-force solving over finite carriers.
//!
//! Equations are written in the expression grammar with `x` and `y` as the
//! variables, applications like `f(x+y)` for unknown functions, and any other
//! symbol (`lambda`, `mu`, ...) as a parameter that must be bound.

mod corpus;
mod solve;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;

pub use corpus::{
    corpus, logarithmic_zero_check, lookup, t1431_check, LogZeroReport, NamedEquation, T1431Report,
};
pub use solve::{feq_solve_brute, solve_all_units, SolveReport};

use crate::algebra::FiniteCarrier;
use crate::cocycle::{run_check, CheckResult, Mode};
use crate::domain::{apply1, BinaryFn, Domain, UnaryFn};
use crate::error::{Error, Result};
use crate::expr::{parse_equation, parse_expr, Expr};

const VARS: [&str; 2] = ["x", "y"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub lhs: Expr,
    pub rhs: Expr,
    /// Printed with every report, e.g. for equations whose finite evidence
    /// settles nothing.
    pub note: Option<String>,
}

impl Equation {
    pub fn parse(text: &str) -> Result<Self> {
        let (lhs, rhs) = parse_equation(text)?;
        Ok(Equation { name: text.trim().to_string(), lhs, rhs, note: None })
    }

    /// Function symbols, sorted.
    pub fn functions(&self) -> BTreeSet<String> {
        let mut s = self.lhs.functions();
        s.extend(self.rhs.functions());
        s
    }

    /// Symbols other than `x` and `y`, sorted.
    pub fn params(&self) -> BTreeSet<String> {
        let mut s = self.lhs.symbols();
        s.extend(self.rhs.symbols());
        s.retain(|v| !VARS.contains(&v.as_str()));
        s
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// An equation side with symbols resolved against a domain.
#[derive(Clone, Debug)]
pub(crate) enum Node<E> {
    Const(E),
    Var(usize),
    Neg(Box<Node<E>>),
    Add(Box<Node<E>>, Box<Node<E>>),
    Sub(Box<Node<E>>, Box<Node<E>>),
    Mul(Box<Node<E>>, Box<Node<E>>),
    Div(Box<Node<E>>, Box<Node<E>>),
    Pow(Box<Node<E>>, i64),
    Call(usize, Box<Node<E>>),
}

pub(crate) enum Ev<E> {
    Val(E),
    /// The tuple is inadmissible: an escape or a non-invertible divisor.
    Skip,
    /// Needs a function value that is not known yet; the key is whatever
    /// the lookup callback chose to report.
    Blocked(usize),
}

macro_rules! ev {
    ($e:expr) => {
        match $e {
            Ev::Val(v) => v,
            Ev::Skip => return Ev::Skip,
            Ev::Blocked(k) => return Ev::Blocked(k),
        }
    };
}

fn pow<D: Domain>(d: &D, a: &D::Elem, k: i64) -> Option<D::Elem> {
    let base = if k < 0 { d.inv(a)? } else { a.clone() };
    let mut e = k.unsigned_abs();
    let (mut acc, mut b) = (d.one(), base);
    while e > 0 {
        if e & 1 == 1 {
            acc = d.mul(&acc, &b);
        }
        b = d.mul(&b, &b);
        e >>= 1;
    }
    Some(acc)
}

impl<E: Clone> Node<E> {
    /// Resolves symbols. `vars` are the free variables, `fns` the function
    /// names; constant subtrees are folded so that a constant divisor that
    /// is not invertible is caught here rather than skipped at every point.
    pub(crate) fn compile<D: Domain<Elem = E>>(
        d: &D,
        e: &Expr,
        vars: &[&str],
        fns: &[String],
        params: &HashMap<String, E>,
    ) -> Result<Self> {
        let c = |x: &Expr| Self::compile(d, x, vars, fns, params).map(Box::new);
        let node = match e {
            Expr::Num(n) => {
                let n = n.to_i64().ok_or_else(|| Error::InvalidArgument(format!("literal {n} is too large")))?;
                Node::Const(d.from_int(n))
            }
            Expr::Sym(s) => match vars.iter().position(|v| v == s) {
                Some(i) => Node::Var(i),
                None => Node::Const(params.get(s).cloned().ok_or_else(|| Error::UnboundSymbol(s.clone()))?),
            },
            Expr::Neg(a) => Node::Neg(c(a)?),
            Expr::Add(a, b) => Node::Add(c(a)?, c(b)?),
            Expr::Sub(a, b) => Node::Sub(c(a)?, c(b)?),
            Expr::Mul(a, b) => Node::Mul(c(a)?, c(b)?),
            Expr::Div(a, b) => Node::Div(c(a)?, c(b)?),
            Expr::Pow(a, k) => Node::Pow(c(a)?, *k),
            Expr::Apply(f, a) => {
                let i = fns.iter().position(|g| g == f).ok_or_else(|| Error::UnboundSymbol(f.clone()))?;
                Node::Call(i, c(a)?)
            }
        };
        node.fold(d, e)
    }

    fn fold<D: Domain<Elem = E>>(self, d: &D, src: &Expr) -> Result<Self> {
        let unit = |n: &Node<E>| match n {
            Node::Const(v) => d.inv(v).is_some(),
            _ => true,
        };
        let ok = match &self {
            Node::Div(_, b) => unit(b),
            Node::Pow(a, k) => *k >= 0 || unit(a),
            _ => true,
        };
        if !ok {
            return Err(Error::UnsupportedOperator(format!(
                "`{src}` divides by a non-invertible constant on {}",
                d.describe()
            )));
        }
        let konst = |n: &Node<E>| matches!(n, Node::Const(_));
        let foldable = match &self {
            Node::Neg(a) | Node::Pow(a, _) => konst(a),
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => konst(a) && konst(b),
            _ => false,
        };
        if foldable {
            if let Ev::Val(v) = self.eval(d, &[], &mut |_, _| Ev::Skip) {
                return Ok(Node::Const(v));
            }
        }
        Ok(self)
    }

    pub(crate) fn eval<D: Domain<Elem = E>>(
        &self,
        d: &D,
        vars: &[E],
        call: &mut dyn FnMut(usize, &E) -> Ev<E>,
    ) -> Ev<E> {
        Ev::Val(match self {
            Node::Const(c) => c.clone(),
            Node::Var(i) => vars[*i].clone(),
            Node::Neg(a) => d.neg(&ev!(a.eval(d, vars, call))),
            Node::Add(a, b) => {
                let a = ev!(a.eval(d, vars, call));
                d.add(&a, &ev!(b.eval(d, vars, call)))
            }
            Node::Sub(a, b) => {
                let a = ev!(a.eval(d, vars, call));
                d.sub(&a, &ev!(b.eval(d, vars, call)))
            }
            Node::Mul(a, b) => {
                let a = ev!(a.eval(d, vars, call));
                d.mul(&a, &ev!(b.eval(d, vars, call)))
            }
            Node::Div(a, b) => {
                let a = ev!(a.eval(d, vars, call));
                let b = ev!(b.eval(d, vars, call));
                match d.inv(&b) {
                    Some(bi) => d.mul(&a, &bi),
                    None => return Ev::Skip,
                }
            }
            Node::Pow(a, k) => match pow(d, &ev!(a.eval(d, vars, call)), *k) {
                Some(v) => v,
                None => return Ev::Skip,
            },
            Node::Call(i, a) => {
                let a = ev!(a.eval(d, vars, call));
                return call(*i, &a);
            }
        })
    }
}

/// An equation compiled against a domain, with its function symbols in
/// sorted order.
pub(crate) struct Compiled<E> {
    pub fns: Vec<String>,
    pub lhs: Node<E>,
    pub rhs: Node<E>,
}

impl<E: Clone> Compiled<E> {
    pub(crate) fn new<D: Domain<Elem = E>>(d: &D, eq: &Equation, params: &HashMap<String, E>) -> Result<Self> {
        let fns: Vec<String> = eq.functions().into_iter().collect();
        let lhs = Node::compile(d, &eq.lhs, &VARS, &fns, params)?;
        let rhs = Node::compile(d, &eq.rhs, &VARS, &fns, params)?;
        Ok(Compiled { fns, lhs, rhs })
    }

    /// Both sides at `(x, y)`, unless the tuple is skipped or blocked.
    pub(crate) fn sides<D: Domain<Elem = E>>(
        &self,
        d: &D,
        xy: &[E],
        call: &mut dyn FnMut(usize, &E) -> Ev<E>,
    ) -> Ev<(E, E)> {
        let l = ev!(self.lhs.eval(d, xy, call));
        let r = ev!(self.rhs.eval(d, xy, call));
        Ev::Val((l, r))
    }
}

/// Checks `eq` at every pair `(x, y)` of domain points (or a seeded sample).
/// Pairs where a function is applied outside the domain, or where a
/// divisor is not invertible, are skipped and counted. A failure carries the
/// first violating pair in enumeration order.
pub fn feq_check<D: Domain>(
    d: &D,
    eq: &Equation,
    bindings: &HashMap<String, UnaryFn<D::Elem>>,
    params: &HashMap<String, D::Elem>,
    mode: Mode,
    budget: u64,
) -> Result<CheckResult<D::Elem>> {
    let comp = Compiled::new(d, eq, params)?;
    let fs: Vec<UnaryFn<D::Elem>> = comp
        .fns
        .iter()
        .map(|n| bindings.get(n).cloned().ok_or_else(|| Error::UnboundSymbol(n.clone())))
        .collect::<Result<_>>()?;
    let check = |t: &[D::Elem]| -> Option<(D::Elem, D::Elem)> {
        let mut call = |i: usize, a: &D::Elem| apply1(d, &fs[i], a).map_or(Ev::Skip, Ev::Val);
        match comp.sides(d, t, &mut call) {
            Ev::Val(lr) => Some(lr),
            _ => None,
        }
    };
    let outcome = run_check(d, 2, mode, budget, &check)?;
    Ok(CheckResult { name: eq.name.clone(), vars: "x, y", outcome })
}

/// A unary function given by an expression in `x`, e.g. `2*x` or `x^2+1`.
/// The result is undefined where the expression divides by a non-unit.
pub fn expr_function<D: Domain + 'static>(
    d: &D,
    body: &str,
    params: &HashMap<String, D::Elem>,
) -> Result<UnaryFn<D::Elem>> {
    let e = parse_expr(body)?;
    let node = Node::compile(d, &e, &["x"], &[], params)?;
    let d = d.clone();
    Ok(Arc::new(move |x: &D::Elem| match node.eval(&d, std::slice::from_ref(x), &mut |_, _| Ev::Skip) {
        Ev::Val(v) => Some(v),
        _ => None,
    }))
}

/// A two-argument map given by an expression in `a` and `b`.
pub fn expr_function2<D: Domain + 'static>(
    d: &D,
    body: &str,
    params: &HashMap<String, D::Elem>,
) -> Result<BinaryFn<D::Elem>> {
    let e = parse_expr(body)?;
    let node = Node::compile(d, &e, &["a", "b"], &[], params)?;
    let d = d.clone();
    Ok(Arc::new(move |a: &D::Elem, b: &D::Elem| match node.eval(&d, &[a.clone(), b.clone()], &mut |_, _| Ev::Skip) {
        Ev::Val(v) => Some(v),
        _ => None,
    }))
}

/// The value of a closed expression such as `3`, `-1/2` or `lambda^2`.
pub fn eval_constant<D: Domain>(d: &D, text: &str, params: &HashMap<String, D::Elem>) -> Result<D::Elem> {
    let e = parse_expr(text)?;
    match Node::compile(d, &e, &[], &[], params)?.eval(d, &[], &mut |_, _| Ev::Skip) {
        Ev::Val(v) => Ok(v),
        _ => Err(Error::UnsupportedOperator(format!("`{text}` has no value on {}", d.describe()))),
    }
}

/// A total table on a finite carrier, listing `f(0), f(1), ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnTable {
    pub carrier: FiniteCarrier,
    pub values: Vec<u64>,
}

impl FnTable {
    pub fn new(carrier: FiniteCarrier, values: Vec<u64>) -> Result<Self> {
        let n = carrier.modulus();
        if values.len() as u64 != n || values.iter().any(|&v| v >= n) {
            return Err(Error::InvalidArgument(format!("a table on {carrier} lists {n} residues below {n}")));
        }
        Ok(FnTable { carrier, values })
    }

    /// Parses `0,1,2` or `[0, 1, 2]`.
    pub fn parse(carrier: &FiniteCarrier, text: &str) -> Result<Self> {
        let body = text.trim().trim_start_matches('[').trim_end_matches(']');
        let values = body
            .split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|_| Error::Parse(format!("table entry `{}`", s.trim()))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(carrier.clone(), values)
    }

    pub fn to_fn(&self) -> UnaryFn<u64> {
        let v = self.values.clone();
        Arc::new(move |x: &u64| v.get(*x as usize).copied())
    }
}

impl fmt::Display for FnTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(u64::to_string).collect();
        write!(f, "[{}]", v.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{qi, Q};
    use crate::cocycle::Outcome;
    use crate::domain::{parity, IntegerWindow};

    const B: u64 = 10_000_000;

    fn bind<E>(name: &str, f: UnaryFn<E>) -> HashMap<String, UnaryFn<E>> {
        HashMap::from([(name.to_string(), f)])
    }

    #[test]
    fn cauchy_on_gf5() {
        let c = FiniteCarrier::gf(5).unwrap();
        let eq = lookup("cauchy-add").unwrap();
        let two_x = expr_function(&c, "2*x", &HashMap::new()).unwrap();
        let r = feq_check(&c, &eq, &bind("f", two_x), &HashMap::new(), Mode::Exhaustive, B).unwrap();
        assert_eq!(r.outcome, Outcome::Pass { checked: 25, skipped: 0 });
        let sq = expr_function(&c, "x^2", &HashMap::new()).unwrap();
        let r = feq_check(&c, &eq, &bind("f", sq), &HashMap::new(), Mode::Exhaustive, B).unwrap();
        assert_eq!(r.outcome, Outcome::Fail { witness: vec![1, 1], lhs: 4, rhs: 2 });
    }

    #[test]
    fn parity_hosszu_and_jensen() {
        let w = IntegerWindow::symmetric(10);
        let p: UnaryFn<Q> = Arc::new(parity);
        let r = feq_check(&w, &lookup("hosszu").unwrap(), &bind("f", p.clone()), &HashMap::new(), Mode::Exhaustive, B)
            .unwrap();
        let Outcome::Pass { checked, skipped } = r.outcome else { panic!("{r}") };
        assert_eq!(checked + skipped, 441);
        assert!(skipped > 0);
        // (2,3): f(-1) + f(6) = f(2) + f(3)
        assert_eq!(parity(&qi(-1)).unwrap() + parity(&qi(6)).unwrap(), qi(1));

        let r = feq_check(&w, &lookup("jensen").unwrap(), &bind("f", p), &HashMap::new(), Mode::Exhaustive, B).unwrap();
        assert_eq!(r.outcome, Outcome::Fail { witness: vec![qi(0), qi(2)], lhs: qi(0), rhs: qi(1) });
    }

    #[test]
    fn unsupported_and_unbound() {
        let jensen = lookup("jensen").unwrap();
        let id = |c: &FiniteCarrier| expr_function(c, "x", &HashMap::new()).unwrap();
        for c in [FiniteCarrier::zmod(4).unwrap(), FiniteCarrier::gf(2).unwrap()] {
            let r = feq_check(&c, &jensen, &bind("f", id(&c)), &HashMap::new(), Mode::Exhaustive, B);
            assert!(matches!(r, Err(Error::UnsupportedOperator(_))), "{r:?}");
        }
        let c = FiniteCarrier::gf(5).unwrap();
        let r = feq_check(&c, &lookup("alien-c22").unwrap(), &bind("f", id(&c)), &HashMap::new(), Mode::Exhaustive, B);
        assert_eq!(r, Err(Error::UnboundSymbol("lambda".into())));
        let r = feq_check(&c, &lookup("cl-pair").unwrap(), &bind("f", id(&c)), &HashMap::new(), Mode::Exhaustive, B);
        assert_eq!(r, Err(Error::UnboundSymbol("g".into())));
    }

    #[test]
    fn variable_divisor_is_skipped() {
        let c = FiniteCarrier::gf(5).unwrap();
        let eq = Equation::parse("f(x/y) = f(x) - f(y)").unwrap();
        let z = expr_function(&c, "0", &HashMap::new()).unwrap();
        let r = feq_check(&c, &eq, &bind("f", z), &HashMap::new(), Mode::Exhaustive, B).unwrap();
        assert_eq!(r.outcome, Outcome::Pass { checked: 20, skipped: 5 });
    }

    #[test]
    fn sampled_mode_is_seeded() {
        let c = FiniteCarrier::gf(7).unwrap();
        let eq = lookup("cauchy-mult").unwrap();
        let f = expr_function(&c, "x^3", &HashMap::new()).unwrap();
        let m = Mode::Sampled { n: 30, seed: 9 };
        let a = feq_check(&c, &eq, &bind("f", f.clone()), &HashMap::new(), m, B).unwrap();
        let b = feq_check(&c, &eq, &bind("f", f), &HashMap::new(), m, B).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.outcome, Outcome::Pass { checked: 30, skipped: 0 });
    }

    #[test]
    fn closed_and_binary_expressions() {
        let w = IntegerWindow::symmetric(5);
        assert_eq!(eval_constant(&w, "-1/2", &HashMap::new()).unwrap(), crate::algebra::q(-1, 2));
        let c = FiniteCarrier::gf(7).unwrap();
        assert_eq!(eval_constant(&c, "1/2", &HashMap::new()).unwrap(), 4);
        assert!(eval_constant(&c, "x", &HashMap::new()).is_err());
        let f = expr_function2(&c, "a*b + 1", &HashMap::new()).unwrap();
        assert_eq!(f(&3, &4), Some(6));
    }

    #[test]
    fn fn_table_parse() {
        let c = FiniteCarrier::gf(3).unwrap();
        let t = FnTable::parse(&c, "[0, 2, 1]").unwrap();
        assert_eq!(t.to_string(), "[0, 2, 1]");
        assert_eq!((t.to_fn())(&1), Some(2));
        assert!(FnTable::parse(&c, "0,1").is_err());
        assert!(FnTable::parse(&c, "0,1,3").is_err());
    }
}
