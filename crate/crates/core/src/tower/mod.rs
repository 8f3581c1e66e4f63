//! Finitely generated field extensions of Q.
//!
//! A [`FieldTower`] is built by adjoining generators one at a time; each is
//! either transcendental (no relations) or algebraic with a monic,
//! square-free minimal polynomial over the tower built so far. Towers are
//! identified by construction: adjoining the same generators twice yields
//! two distinct, non-interoperable towers.

pub(crate) mod arith;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{poly_gcd, MultiPoly, RatFunc, Q};
use crate::error::{Error, Result};
use crate::expr::{parse_expr, Expr};
use arith::{Gen, GenKind, Val};

static NEXT_TOWER_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug)]
struct TowerData {
    id: u64,
    gens: Vec<Gen>,
    vars: Arc<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct FieldTower {
    data: Arc<TowerData>,
}

/// Public description of a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Transcendental,
    /// Minimal polynomial, rendered over the tower below.
    Algebraic { degree: usize, minpoly: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub kind: GeneratorKind,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.data.id == other.data.id
    }
}

impl Eq for FieldTower {}

impl Default for FieldTower {
    fn default() -> Self {
        Self::new()
    }
}

impl FieldTower {
    /// The tower Q with no generators.
    pub fn new() -> Self {
        Self::from_gens(vec![])
    }

    fn from_gens(gens: Vec<Gen>) -> Self {
        let vars = Arc::new(gens.iter().map(|g| g.name.clone()).collect());
        FieldTower {
            data: Arc::new(TowerData { id: NEXT_TOWER_ID.fetch_add(1, Ordering::Relaxed), gens, vars }),
        }
    }

    pub(crate) fn gens(&self) -> &[Gen] {
        &self.data.gens
    }

    pub fn len(&self) -> usize {
        self.data.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.gens.is_empty()
    }

    pub fn names(&self) -> &Arc<Vec<String>> {
        &self.data.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.data.gens.iter().position(|g| g.name == name)
    }

    pub fn is_transcendental(&self, i: usize) -> bool {
        matches!(self.data.gens[i].kind, GenKind::Trans)
    }

    pub fn transcendental_names(&self) -> Vec<String> {
        self.data
            .gens
            .iter()
            .filter(|g| matches!(g.kind, GenKind::Trans))
            .map(|g| g.name.clone())
            .collect()
    }

    pub fn generators(&self) -> Vec<GeneratorSpec> {
        (0..self.len())
            .map(|i| {
                let g = &self.data.gens[i];
                let kind = match &g.kind {
                    GenKind::Trans => GeneratorKind::Transcendental,
                    GenKind::Alg(m) => GeneratorKind::Algebraic {
                        degree: m.len() - 1,
                        minpoly: self.render_minpoly(i),
                    },
                };
                GeneratorSpec { name: g.name.clone(), kind }
            })
            .collect()
    }

    fn render_minpoly(&self, i: usize) -> String {
        let GenKind::Alg(m) = &self.data.gens[i].kind else { return String::new() };
        // Render inside the tower where the generator is treated as transcendental.
        let mut gens: Vec<Gen> = self.data.gens[..i].to_vec();
        gens.push(Gen { name: self.data.gens[i].name.clone(), kind: GenKind::Trans });
        let t = FieldTower::from_gens(gens);
        let lower = &t.gens()[..i];
        let val = Val::Frac(m.clone(), vec![arith::one(lower)]);
        TowerElement { tower: t, val }.to_string()
    }

    pub fn adjoin_transcendental(&self, name: &str) -> Result<FieldTower> {
        self.check_new_name(name)?;
        let mut gens = self.data.gens.clone();
        gens.push(Gen { name: name.to_string(), kind: GenKind::Trans });
        Ok(Self::from_gens(gens))
    }

    /// Adjoins a root of `minpoly`, an expression that must be a polynomial in
    /// `name` with coefficients in this tower.
    pub fn adjoin_algebraic(&self, name: &str, minpoly: &Expr) -> Result<FieldTower> {
        self.check_new_name(name)?;
        let tmp = self.adjoin_transcendental(name)?;
        let e = tmp.eval(minpoly)?;
        let Val::Frac(n, d) = e.val else { unreachable!() };
        if d.len() != 1 {
            return Err(Error::NotAPolynomial(name.to_string()));
        }
        // den is monic of degree 0, i.e. exactly one
        let coeffs = n;
        self.adjoin_algebraic_raw(name, coeffs)
    }

    /// Adjoins a root of `sum coeffs[i] * name^i` with coefficients in this tower.
    pub fn adjoin_algebraic_coeffs(&self, name: &str, coeffs: &[TowerElement]) -> Result<FieldTower> {
        self.check_new_name(name)?;
        for c in coeffs {
            if &c.tower != self {
                return Err(Error::TowerMismatch);
            }
        }
        let mut v: Vec<Val> = coeffs.iter().map(|c| c.val.clone()).collect();
        while v.last().map_or(false, arith::is_zero) {
            v.pop();
        }
        self.adjoin_algebraic_raw(name, v)
    }

    fn adjoin_algebraic_raw(&self, name: &str, coeffs: Vec<Val>) -> Result<FieldTower> {
        let gens = self.gens();
        let degree = coeffs.len().saturating_sub(1);
        if degree < 2 {
            return Err(Error::MinpolyDegree { name: name.to_string(), degree });
        }
        let lc = arith::inv(gens, coeffs.last().unwrap())?;
        let monic = arith::up_scale(gens, &coeffs, &lc)?;
        if arith::squarefree_defect(gens, &monic)? > 0 {
            return Err(Error::NotSquareFree(name.to_string()));
        }
        let mut all = gens.to_vec();
        all.push(Gen { name: name.to_string(), kind: GenKind::Alg(monic) });
        Ok(Self::from_gens(all))
    }

    fn check_new_name(&self, name: &str) -> Result<()> {
        if self.index_of(name).is_some() {
            return Err(Error::DuplicateGenerator(name.to_string()));
        }
        if name.is_empty() || !name.chars().next().unwrap().is_alphabetic() {
            return Err(Error::InvalidArgument(format!("invalid generator name `{name}`")));
        }
        Ok(())
    }

    pub(crate) fn element(&self, val: Val) -> TowerElement {
        TowerElement { tower: self.clone(), val }
    }

    pub fn zero(&self) -> TowerElement {
        self.element(arith::zero(self.gens()))
    }

    pub fn one(&self) -> TowerElement {
        self.element(arith::one(self.gens()))
    }

    pub fn rational(&self, q: &Q) -> TowerElement {
        self.element(arith::from_q(self.gens(), q))
    }

    pub fn int(&self, n: i64) -> TowerElement {
        self.rational(&Q::from_integer(BigInt::from(n)))
    }

    /// Generator `i` as an element of the full tower.
    pub(crate) fn gen_at(&self, i: usize) -> TowerElement {
        let gens = self.gens();
        let g = arith::generator(&gens[..=i]);
        self.element(arith::lift_to(gens, i + 1, g))
    }

    pub fn generator(&self, name: &str) -> Result<TowerElement> {
        let i = self.index_of(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        Ok(self.gen_at(i))
    }

    /// Evaluates an expression built from rationals and generator symbols.
    pub fn eval(&self, e: &Expr) -> Result<TowerElement> {
        self.eval_with(e, &mut |f, _| Err(Error::UnknownFunction(f.to_string())))
    }

    pub fn parse(&self, text: &str) -> Result<TowerElement> {
        self.eval(&parse_expr(text)?)
    }

    /// Evaluates an expression; function applications are delegated to `apply`.
    pub fn eval_with(
        &self,
        e: &Expr,
        apply: &mut dyn FnMut(&str, TowerElement) -> Result<TowerElement>,
    ) -> Result<TowerElement> {
        let gens = self.gens();
        Ok(match e {
            Expr::Num(n) => self.rational(&Q::from_integer(n.clone())),
            Expr::Sym(s) => self.generator(s)?,
            Expr::Neg(a) => self.element(arith::neg(gens, &self.eval_with(a, apply)?.val)),
            Expr::Add(a, b) => {
                let (x, y) = (self.eval_with(a, apply)?, self.eval_with(b, apply)?);
                self.element(arith::add(gens, &x.val, &y.val)?)
            }
            Expr::Sub(a, b) => {
                let (x, y) = (self.eval_with(a, apply)?, self.eval_with(b, apply)?);
                self.element(arith::sub(gens, &x.val, &y.val)?)
            }
            Expr::Mul(a, b) => {
                let (x, y) = (self.eval_with(a, apply)?, self.eval_with(b, apply)?);
                self.element(arith::mul(gens, &x.val, &y.val)?)
            }
            Expr::Div(a, b) => {
                let (x, y) = (self.eval_with(a, apply)?, self.eval_with(b, apply)?);
                if y.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                self.element(arith::div(gens, &x.val, &y.val)?)
            }
            Expr::Pow(a, k) => {
                let x = self.eval_with(a, apply)?;
                if *k < 0 && x.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                self.element(arith::pow(gens, &x.val, *k)?)
            }
            Expr::Apply(f, a) => {
                let x = self.eval_with(a, apply)?;
                apply(f, x)?
            }
        })
    }

    /// Maps a polynomial in (a subset of) the generator names into the tower.
    pub fn from_poly(&self, p: &MultiPoly) -> Result<TowerElement> {
        let gens: Vec<TowerElement> = p
            .vars()
            .iter()
            .map(|v| self.generator(v).map_err(|_| Error::UnknownVariable(v.clone())))
            .collect::<Result<_>>()?;
        let mut acc = self.zero();
        for (m, c) in p.terms() {
            let mut t = self.rational(c);
            for (g, &e) in gens.iter().zip(&m.0) {
                t = t.try_mul(&g.try_pow(e as i64)?)?;
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q")?;
        for g in &self.data.gens {
            write!(f, "({})", g.name)?;
        }
        Ok(())
    }
}

/// An element of a [`FieldTower`] in canonical form.
#[derive(Clone, Debug)]
pub struct TowerElement {
    tower: FieldTower,
    pub(crate) val: Val,
}

impl PartialEq for TowerElement {
    fn eq(&self, other: &Self) -> bool {
        self.tower == other.tower && self.val == other.val
    }
}

impl Eq for TowerElement {}

impl std::hash::Hash for TowerElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.tower.data.id.hash(state);
        self.val.hash(state);
    }
}

/// Equality of canonical forms; errors when the elements live in different towers.
pub fn element_eq(a: &TowerElement, b: &TowerElement) -> Result<bool> {
    if a.tower != b.tower {
        return Err(Error::TowerMismatch);
    }
    Ok(a.val == b.val)
}

impl TowerElement {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    fn same(&self, o: &TowerElement) -> Result<()> {
        if self.tower != o.tower {
            return Err(Error::TowerMismatch);
        }
        Ok(())
    }

    fn wrap(&self, val: Val) -> TowerElement {
        TowerElement { tower: self.tower.clone(), val }
    }

    pub fn is_zero(&self) -> bool {
        arith::is_zero(&self.val)
    }

    pub fn is_one(&self) -> bool {
        self.val == arith::one(self.tower.gens())
    }

    /// The rational value if this element lies in Q.
    pub fn as_rational(&self) -> Option<Q> {
        arith::as_rational(&self.val)
    }

    pub fn try_add(&self, o: &TowerElement) -> Result<TowerElement> {
        self.same(o)?;
        Ok(self.wrap(arith::add(self.tower.gens(), &self.val, &o.val)?))
    }

    pub fn try_sub(&self, o: &TowerElement) -> Result<TowerElement> {
        self.same(o)?;
        Ok(self.wrap(arith::sub(self.tower.gens(), &self.val, &o.val)?))
    }

    pub fn try_mul(&self, o: &TowerElement) -> Result<TowerElement> {
        self.same(o)?;
        Ok(self.wrap(arith::mul(self.tower.gens(), &self.val, &o.val)?))
    }

    pub fn try_div(&self, o: &TowerElement) -> Result<TowerElement> {
        self.same(o)?;
        Ok(self.wrap(arith::div(self.tower.gens(), &self.val, &o.val)?))
    }

    pub fn inv(&self) -> Result<TowerElement> {
        Ok(self.wrap(arith::inv(self.tower.gens(), &self.val)?))
    }

    pub fn try_pow(&self, e: i64) -> Result<TowerElement> {
        Ok(self.wrap(arith::pow(self.tower.gens(), &self.val, e)?))
    }

    pub fn scale(&self, q: &Q) -> TowerElement {
        let c = arith::from_q(self.tower.gens(), q);
        self.wrap(arith::mul(self.tower.gens(), &self.val, &c).expect("scaling by a rational never inverts"))
    }

    /// Flattens into a rational function over Q in all generator symbols.
    pub fn to_ratfunc(&self) -> RatFunc {
        flatten(self.tower.gens(), &self.val, self.tower.names())
    }

    /// Substitutes rational values for the generators. Transcendental
    /// generators may take any value; an algebraic generator's value must be a
    /// root of its minimal polynomial under the substitution.
    pub fn substitute(&self, values: &HashMap<String, Q>) -> Result<Q> {
        let point = substitution_point(&self.tower, values)?;
        arith::substitute(self.tower.gens(), &self.val, &point)
    }

    /// Substitutes an already validated point, one value per generator.
    pub fn substitute_at(&self, point: &[Q]) -> Result<Q> {
        arith::substitute(self.tower.gens(), &self.val, point)
    }
}

/// Resolves a name→value map into a point, validating algebraic generators.
pub fn substitution_point(tower: &FieldTower, values: &HashMap<String, Q>) -> Result<Vec<Q>> {
    let gens = tower.gens();
    let mut point = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let v = values
            .get(&g.name)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("no substitution value for `{}`", g.name)))?;
        if let GenKind::Alg(m) = &g.kind {
            let mut acc = Q::from_integer(0.into());
            for c in m.iter().rev() {
                acc = acc * &v + arith::substitute(&gens[..i], c, &point)?;
            }
            if acc != Q::from_integer(0.into()) {
                return Err(Error::InvalidArgument(format!(
                    "{} = {} is not a root of its minimal polynomial under the substitution",
                    g.name, v
                )));
            }
        }
        point.push(v);
    }
    Ok(point)
}

fn flatten(gens: &[Gen], v: &Val, vars: &Arc<Vec<String>>) -> RatFunc {
    let (n, d) = flatten_parts(gens, v, vars);
    // Over an algebraic level, coprime in the field need not mean coprime as
    // free polynomials, so those towers pay for a full gcd.
    let alg_below_trans = gens
        .iter()
        .position(|g| matches!(g.kind, GenKind::Alg(_)))
        .is_some_and(|i| gens[i..].iter().any(|g| matches!(g.kind, GenKind::Trans)));
    if alg_below_trans {
        return RatFunc::normalize(n, d).expect("canonical denominator is nonzero");
    }
    RatFunc::from_coprime(n, d)
}

/// Coprime numerator and denominator of `v` as polynomials in all generators.
///
/// A canonical fraction over the level below stays coprime once cleared by
/// the lcm of its coefficient denominators, since those only involve lower
/// generators. So the only gcds needed are between lower denominators.
fn flatten_parts(gens: &[Gen], v: &Val, vars: &Arc<Vec<String>>) -> (MultiPoly, MultiPoly) {
    match v {
        Val::Q(x) => (MultiPoly::constant(vars, x.clone()), MultiPoly::one(vars)),
        Val::Frac(n, d) => {
            let k = gens.len() - 1;
            let (a, l1) = flatten_up(&gens[..k], n, k, vars);
            let (b, l2) = flatten_up(&gens[..k], d, k, vars);
            let g = poly_gcd(&l1, &l2);
            let (l1, l2) = if g.is_one() {
                (l1, l2)
            } else {
                (l1.div_exact(&g).expect("gcd divides"), l2.div_exact(&g).expect("gcd divides"))
            };
            (&a * &l2, &b * &l1)
        }
        Val::Poly(c) => {
            let k = gens.len() - 1;
            flatten_up(&gens[..k], c, k, vars)
        }
    }
}

fn flatten_up(lower: &[Gen], c: &[Val], k: usize, vars: &Arc<Vec<String>>) -> (MultiPoly, MultiPoly) {
    let x = MultiPoly::var_index(vars, k);
    let parts: Vec<(usize, MultiPoly, MultiPoly)> = c
        .iter()
        .enumerate()
        .filter(|(_, coeff)| !arith::is_zero(coeff))
        .map(|(i, coeff)| {
            let (n, d) = flatten_parts(lower, coeff, vars);
            (i, n, d)
        })
        .collect();
    let mut l = MultiPoly::one(vars);
    for (_, _, d) in &parts {
        if !d.is_one() {
            let g = poly_gcd(&l, d);
            l = &l * &d.div_exact(&g).expect("gcd divides");
        }
    }
    let mut acc = MultiPoly::zero(vars);
    for (i, n, d) in &parts {
        let cofactor = l.div_exact(d).expect("lcm is a multiple");
        acc = &acc + &(&(n * &cofactor) * &x.pow(*i as u32));
    }
    (acc, l)
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratfunc())
    }
}

macro_rules! op_impl {
    ($tr:ident, $f:ident, $m:ident) => {
        impl<'a> $tr<&'a TowerElement> for &'a TowerElement {
            type Output = TowerElement;
            /// Panics on tower mismatch or when a reducible minimal polynomial
            /// produces a zero divisor; use the `try_` methods to handle those.
            fn $f(self, rhs: &TowerElement) -> TowerElement {
                self.$m(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<TowerElement> for TowerElement {
            type Output = TowerElement;
            fn $f(self, rhs: TowerElement) -> TowerElement {
                (&self).$f(&rhs)
            }
        }
    };
}
op_impl!(Add, add, try_add);
op_impl!(Sub, sub, try_sub);
op_impl!(Mul, mul, try_mul);

impl Neg for &TowerElement {
    type Output = TowerElement;
    fn neg(self) -> TowerElement {
        self.wrap(arith::neg(self.tower.gens(), &self.val))
    }
}

impl Neg for TowerElement {
    type Output = TowerElement;
    fn neg(self) -> TowerElement {
        -&self
    }
}

/// Parses a tower description such as `t: trans; s: alg s^2 - t`.
pub fn parse_tower(text: &str) -> Result<FieldTower> {
    let mut t = FieldTower::new();
    for decl in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        t = adjoin_decl(&t, decl)?;
    }
    Ok(t)
}

/// Applies one `name: trans` or `name: alg <poly>` declaration.
pub fn adjoin_decl(t: &FieldTower, decl: &str) -> Result<FieldTower> {
    let (name, rest) = decl
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("generator declaration `{decl}`: expected `name: trans` or `name: alg <poly>`")))?;
    let name = name.trim();
    let rest = rest.trim();
    if rest == "trans" {
        return t.adjoin_transcendental(name);
    }
    if let Some(poly) = rest.strip_prefix("alg") {
        return t.adjoin_algebraic(name, &parse_expr(poly.trim())?);
    }
    Err(Error::Parse(format!("generator declaration `{decl}`: unknown kind `{rest}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};

    fn sqrt2() -> FieldTower {
        FieldTower::new().adjoin_algebraic("s", &parse_expr("s^2 - 2").unwrap()).unwrap()
    }

    #[test]
    fn rationals_only() {
        let t = FieldTower::new();
        let a = t.rational(&q(3, 4));
        assert_eq!(a.as_rational(), Some(q(3, 4)));
        assert_eq!(t.parse("6/8").unwrap(), a);
        assert_eq!(a.to_string(), "3/4");
    }

    #[test]
    fn flattening_skips_gcds_soundly() {
        let cases = [
            ("t: trans; s: alg s^2 - t", "((3*t^3 - 2*t + 7) + (5*t^3 + t^2 - 4)*s)/((2*t^3 + 9*t - 1) + (t^2 + 6)*s)"),
            ("t: trans; s: alg s^2 - t", "1/(t^2 - 1) + s/(t^2 + t)"),
            ("t: trans; u: trans", "(u^2 - t^2)/(u*t + t^2) + 1/(t - 1)"),
            ("t: trans; u: trans", "(u/(t + 1) + 1/(t^2 - 1))/(u^2/(t - 1) + t)"),
            ("r: alg r^2 - 2; t: trans", "(t^2 - 2)/(t - r) + r/t"),
        ];
        for (tower, text) in cases {
            let tw = parse_tower(tower).unwrap();
            let e = tw.parse(text).unwrap();
            let vars = tw.names().clone();
            let (n, d) = flatten_parts(tw.gens(), &e.val, &vars);
            assert_eq!(e.to_ratfunc(), RatFunc::normalize(n, d).unwrap(), "{text}");
        }
    }

    #[test]
    fn fraction_sums_with_shared_factors() {
        let t = FieldTower::new().adjoin_transcendental("t").unwrap();
        let a = t.parse("1/(t^2 + t)").unwrap();
        let b = t.parse("1/(t^2 + 2*t)").unwrap();
        let den = t.parse("t").unwrap().try_mul(&t.parse("t + 1").unwrap()).unwrap();
        let den = den.try_mul(&t.parse("t + 2").unwrap()).unwrap();
        let want = t.parse("2*t + 3").unwrap().try_mul(&den.inv().unwrap()).unwrap();
        assert_eq!(a.try_add(&b).unwrap(), want);
        // the shared factor cancels against the numerator
        let c = t.parse("1/(t^2 - t)").unwrap();
        let e = t.parse("1/(t^2 + t)").unwrap();
        let want = t.parse("t^2 - 1").unwrap().inv().unwrap().scale(&qi(2));
        assert_eq!(c.try_add(&e).unwrap(), want);
    }

    #[test]
    fn adjoin_examples() {
        let t = FieldTower::new().adjoin_transcendental("t").unwrap();
        assert_eq!(t.to_string(), "Q(t)");
        let tu = t.adjoin_transcendental("u").unwrap();
        assert_eq!(tu.len(), 2);
        assert_eq!(t.adjoin_transcendental("t").unwrap_err(), Error::DuplicateGenerator("t".into()));

        let s = sqrt2();
        assert_eq!(s.parse("(s+1)*(s-1)").unwrap(), s.one());
        let err = FieldTower::new().adjoin_algebraic("s", &parse_expr("s^2 - 2*s + 1").unwrap());
        assert_eq!(err.unwrap_err(), Error::NotSquareFree("s".into()));
        let err = FieldTower::new().adjoin_algebraic("s", &parse_expr("2*s + 1").unwrap());
        assert!(matches!(err, Err(Error::MinpolyDegree { degree: 1, .. })));
        let err = t.adjoin_algebraic("s", &parse_expr("s^2 - 1/t").unwrap());
        assert!(err.is_ok(), "coefficients may be fractions of lower generators");
        let err = t.adjoin_algebraic("s", &parse_expr("1/s").unwrap());
        assert_eq!(err.unwrap_err(), Error::NotAPolynomial("s".into()));
    }

    #[test]
    fn sqrt_t_reduction() {
        let t = parse_tower("t: trans; s: alg s^2 - t").unwrap();
        assert_eq!(t.parse("s^4").unwrap(), t.parse("t^2").unwrap());
        assert_eq!(t.parse("1/s").unwrap().to_string(), "s/t");
        assert_eq!(t.parse("1/(2*s)").unwrap().to_string(), "s/(2*t)");
    }

    #[test]
    fn element_eval_examples() {
        let t = parse_tower("t: trans").unwrap();
        assert_eq!(t.parse("(t^2-1)/(t-1)").unwrap(), t.parse("t+1").unwrap());
        let s = sqrt2();
        assert_eq!(s.parse("1/(s-s)").unwrap_err(), Error::ZeroDenominator);
        assert_eq!(s.parse("x").unwrap_err(), Error::UnknownSymbol("x".into()));
    }

    #[test]
    fn element_eq_examples() {
        let s = sqrt2();
        assert!(element_eq(&s.parse("s*s").unwrap(), &s.int(2)).unwrap());
        let tu = parse_tower("t: trans; u: trans").unwrap();
        assert!(element_eq(&tu.parse("t+1").unwrap(), &tu.parse("1+t").unwrap()).unwrap());
        assert!(!element_eq(&tu.parse("t").unwrap(), &tu.parse("u").unwrap()).unwrap());
        let other = parse_tower("t: trans; u: trans").unwrap();
        assert_eq!(element_eq(&tu.one(), &other.one()), Err(Error::TowerMismatch));
    }

    #[test]
    fn reducible_minpoly_is_loud() {
        let t = FieldTower::new().adjoin_algebraic("s", &parse_expr("s^2 - 1").unwrap()).unwrap();
        let e = t.parse("1/(s - 1)").unwrap_err();
        assert_eq!(e, Error::ZeroDivisor("s".into()));
    }

    #[test]
    fn nested_algebraic_inverse() {
        let t = parse_tower("a: alg a^2 - 2; b: alg b^3 - 5").unwrap();
        let x = t.parse("a + b + 1").unwrap();
        assert!((&x * &x.inv().unwrap()).is_one());
        let y = t.parse("a*b^2 - 3").unwrap();
        assert_eq!(t.parse("(a*b^2 - 3)^-2").unwrap(), y.try_pow(-2).unwrap());
    }

    #[test]
    fn substitution() {
        let t = parse_tower("t: trans; s: alg s^2 - t").unwrap();
        let x = t.parse("(s + t)/(t - 1)").unwrap();
        let vals: HashMap<String, Q> = [("t".to_string(), qi(4)), ("s".to_string(), qi(-2))].into();
        assert_eq!(x.substitute(&vals).unwrap(), q(2, 3));
        let bad: HashMap<String, Q> = [("t".to_string(), qi(4)), ("s".to_string(), qi(3))].into();
        assert!(x.substitute(&bad).is_err());
        let pole: HashMap<String, Q> = [("t".to_string(), qi(1)), ("s".to_string(), qi(1))].into();
        assert!(matches!(x.substitute(&pole), Err(Error::Pole(_))));
    }

    #[test]
    fn minpoly_rendering() {
        let t = parse_tower("t: trans; s: alg s^2 - t").unwrap();
        let g = t.generators();
        assert_eq!(g[1].kind, GeneratorKind::Algebraic { degree: 2, minpoly: "s^2 - t".into() });
    }
}
