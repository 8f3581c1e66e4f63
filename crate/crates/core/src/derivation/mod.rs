//! Derivations on field towers.
//!
//! A derivation is fixed by its values on the transcendental generators;
//! values on algebraic generators are forced by `d(s) = -p^d(s) / p'(s)`
//! where `p^d` applies `d` to the coefficients of the minimal polynomial.

mod rank;
mod residual;

use std::collections::HashMap;
use std::fmt;

use crate::algebra::Q;
use crate::error::{Error, Result};
use crate::tower::arith::{self, GenKind, Val};
use crate::tower::{FieldTower, TowerElement};

pub use rank::{default_substitution, independence_rank, iterate, DerivationPower, ElementMap};
pub use residual::{
    mobius_residual, monomial_residual, nth_power_hom_residual, power_rule_residual, reflection_residual,
    square_rule_residual, AffineDerivation,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    tower: FieldTower,
    /// One value per generator, in tower order.
    values: Vec<TowerElement>,
}

impl Derivation {
    /// Builds the unique derivation with the given values on the
    /// transcendental generators.
    pub fn define(tower: &FieldTower, values: &HashMap<String, TowerElement>) -> Result<Derivation> {
        for (name, v) in values {
            match tower.index_of(name) {
                Some(i) if tower.is_transcendental(i) => {}
                _ => return Err(Error::UnexpectedGeneratorValue(name.clone())),
            }
            if v.tower() != tower {
                return Err(Error::TowerMismatch);
            }
        }
        let mut d = Derivation { tower: tower.clone(), values: Vec::with_capacity(tower.len()) };
        for (i, g) in tower.gens().iter().enumerate() {
            let v = match &g.kind {
                GenKind::Trans => values.get(&g.name).cloned().ok_or_else(|| Error::MissingGeneratorValue(g.name.clone()))?,
                GenKind::Alg(m) => d.forced_value(i, m)?,
            };
            d.values.push(v);
        }
        Ok(d)
    }

    /// Like [`Derivation::define`] with values given as expressions over the tower.
    pub fn define_str(tower: &FieldTower, values: &[(&str, &str)]) -> Result<Derivation> {
        let map = values
            .iter()
            .map(|(n, e)| Ok((n.to_string(), tower.parse(e)?)))
            .collect::<Result<HashMap<_, _>>>()?;
        Self::define(tower, &map)
    }

    pub fn zero(tower: &FieldTower) -> Derivation {
        let map = tower.transcendental_names().into_iter().map(|n| (n, tower.zero())).collect();
        Self::define(tower, &map).expect("zero values are always admissible")
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    /// The value on a generator, prescribed or forced.
    pub fn value(&self, name: &str) -> Option<&TowerElement> {
        self.tower.index_of(name).map(|i| &self.values[i])
    }

    fn transcendental_values(&self) -> HashMap<String, TowerElement> {
        (0..self.tower.len())
            .filter(|&i| self.tower.is_transcendental(i))
            .map(|i| (self.tower.names()[i].clone(), self.values[i].clone()))
            .collect()
    }

    // -p^d(s)/p'(s) for the algebraic generator at index `i`.
    fn forced_value(&self, i: usize, minpoly: &[Val]) -> Result<TowerElement> {
        let s = self.tower.gen_at(i);
        let mut pd = self.tower.zero();
        let mut dp = self.tower.zero();
        for (k, c) in minpoly.iter().enumerate() {
            let sk = s.try_pow(k as i64)?;
            pd = pd.try_add(&self.eval_level(i, c)?.try_mul(&sk)?)?;
            if k > 0 {
                let c = self.lifted(i, c).scale(&Q::from_integer((k as i64).into()));
                dp = dp.try_add(&c.try_mul(&s.try_pow(k as i64 - 1)?)?)?;
            }
        }
        (-pd).try_div(&dp).map_err(|e| match e {
            Error::DivisionByZero => Error::ZeroDivisor(self.tower.names()[i].clone()),
            e => e,
        })
    }

    fn lifted(&self, level: usize, v: &Val) -> TowerElement {
        self.tower.element(arith::lift_to(self.tower.gens(), level, v.clone()))
    }

    /// `d` of a value living at `level` (the first `level` generators).
    fn eval_level(&self, level: usize, v: &Val) -> Result<TowerElement> {
        match v {
            Val::Q(_) => Ok(self.tower.zero()),
            Val::Poly(c) => self.eval_up(level, c),
            Val::Frac(n, d) => {
                // quotient rule: (v d(u) - u d(v)) / v^2
                let dn = self.eval_up(level, n)?;
                let dd = self.eval_up(level, d)?;
                let u = self.up_element(level, n)?;
                let w = self.up_element(level, d)?;
                dn.try_mul(&w)?.try_sub(&u.try_mul(&dd)?)?.try_div(&w.try_mul(&w)?)
            }
        }
    }

    fn up_element(&self, level: usize, c: &[Val]) -> Result<TowerElement> {
        let g = self.tower.gen_at(level - 1);
        let mut acc = self.tower.zero();
        for v in c.iter().rev() {
            acc = acc.try_mul(&g)?.try_add(&self.lifted(level - 1, v))?;
        }
        Ok(acc)
    }

    // Product and sum rules on sum c_i g^i: d(c_i) g^i + i c_i g^(i-1) d(g).
    fn eval_up(&self, level: usize, c: &[Val]) -> Result<TowerElement> {
        let g = self.tower.gen_at(level - 1);
        let dg = &self.values[level - 1];
        let mut acc = self.tower.zero();
        for (i, ci) in c.iter().enumerate() {
            if arith::is_zero(ci) {
                continue;
            }
            let gi = g.try_pow(i as i64)?;
            acc = acc.try_add(&self.eval_level(level - 1, ci)?.try_mul(&gi)?)?;
            if i > 0 {
                let t = self.lifted(level - 1, ci).scale(&Q::from_integer((i as i64).into()));
                acc = acc.try_add(&t.try_mul(&g.try_pow(i as i64 - 1)?)?.try_mul(dg)?)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &TowerElement) -> Result<TowerElement> {
        if x.tower() != &self.tower {
            return Err(Error::TowerMismatch);
        }
        self.eval_level(self.tower.len(), &x.val)
    }

    /// `alpha*d1 + beta*d2`.
    pub fn combine(alpha: &TowerElement, d1: &Derivation, beta: &TowerElement, d2: &Derivation) -> Result<Derivation> {
        let t = &d1.tower;
        if &d2.tower != t || alpha.tower() != t || beta.tower() != t {
            return Err(Error::TowerMismatch);
        }
        let mut map = d1.transcendental_values();
        for (name, v) in map.iter_mut() {
            let w = d2.value(name).expect("same tower");
            *v = alpha.try_mul(v)?.try_add(&beta.try_mul(w)?)?;
        }
        Self::define(t, &map)
    }

    /// `[d1, d2] = d1 d2 - d2 d1`.
    pub fn bracket(d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
        if d1.tower != d2.tower {
            return Err(Error::TowerMismatch);
        }
        let t = &d1.tower;
        let mut map = HashMap::new();
        for name in t.transcendental_names() {
            let g = t.generator(&name)?;
            let v = d1.eval(&d2.eval(&g)?)?.try_sub(&d2.eval(&d1.eval(&g)?)?)?;
            map.insert(name, v);
        }
        Self::define(t, &map)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, v)) in self.tower.names().iter().zip(&self.values).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "d({n}) = {v}")?;
        }
        Ok(())
    }
}

/// `d(xy) - x d(y) - y d(x)`.
pub fn leibniz_residual(d: &Derivation, x: &TowerElement, y: &TowerElement) -> Result<TowerElement> {
    let xy = x.try_mul(y)?;
    d.eval(&xy)?.try_sub(&x.try_mul(&d.eval(y)?)?)?.try_sub(&y.try_mul(&d.eval(x)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::parse_tower;

    fn dt() -> (FieldTower, Derivation) {
        let t = parse_tower("t: trans").unwrap();
        let d = Derivation::define_str(&t, &[("t", "1")]).unwrap();
        (t, d)
    }

    #[test]
    fn define_examples() {
        let r2 = parse_tower("s: alg s^2 - 2").unwrap();
        let d = Derivation::define(&r2, &HashMap::new()).unwrap();
        assert!(d.value("s").unwrap().is_zero());

        let t = parse_tower("t: trans; s: alg s^2 - t").unwrap();
        let d = Derivation::define_str(&t, &[("t", "1")]).unwrap();
        assert_eq!(d.value("s").unwrap(), &t.parse("1/(2*s)").unwrap());

        let tu = parse_tower("t: trans; u: trans").unwrap();
        let d = Derivation::define_str(&tu, &[("t", "1"), ("u", "t")]).unwrap();
        assert!(d.value("u").unwrap().try_sub(&tu.parse("t").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn define_errors() {
        let tu = parse_tower("t: trans; u: trans").unwrap();
        assert_eq!(Derivation::define_str(&tu, &[("t", "1")]), Err(Error::MissingGeneratorValue("u".into())));
        let ts = parse_tower("t: trans; s: alg s^2 - t").unwrap();
        assert_eq!(
            Derivation::define_str(&ts, &[("t", "1"), ("s", "1")]),
            Err(Error::UnexpectedGeneratorValue("s".into()))
        );
        // reducible but square-free: the forced value only needs p'(s) invertible
        let red = parse_tower("s: alg s^2 - 1").unwrap();
        let d = Derivation::define(&red, &HashMap::new()).unwrap();
        assert!(d.value("s").unwrap().is_zero());
    }

    #[test]
    fn eval_examples() {
        let (t, d) = dt();
        assert_eq!(d.eval(&t.parse("t^3 + 2*t").unwrap()).unwrap().to_string(), "3*t^2 + 2");
        assert_eq!(d.eval(&t.parse("1/t").unwrap()).unwrap().to_string(), "-1/t^2");
        assert!(d.eval(&t.parse("7/3").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn combine_and_bracket() {
        let (t, d) = dt();
        let c = Derivation::combine(&t.one(), &d, &t.zero(), &d).unwrap();
        assert_eq!(c, d);
        let z = Derivation::combine(&t.one(), &d, &t.int(-1), &d).unwrap();
        assert_eq!(z, Derivation::zero(&t));

        let tu = parse_tower("t: trans; u: trans").unwrap();
        let d_t = Derivation::define_str(&tu, &[("t", "1"), ("u", "0")]).unwrap();
        let d_u = Derivation::define_str(&tu, &[("t", "0"), ("u", "1")]).unwrap();
        let e = Derivation::combine(&tu.parse("t").unwrap(), &d_t, &tu.parse("u").unwrap(), &d_u).unwrap();
        assert_eq!(e.eval(&tu.parse("t*u").unwrap()).unwrap(), tu.parse("2*t*u").unwrap());

        assert_eq!(Derivation::bracket(&d, &d).unwrap(), Derivation::zero(&t));
        let td = Derivation::define_str(&t, &[("t", "t")]).unwrap();
        assert_eq!(Derivation::bracket(&d, &td).unwrap(), d);
    }

    #[test]
    fn leibniz_examples() {
        let (t, d) = dt();
        let r = leibniz_residual(&d, &t.parse("t").unwrap(), &t.parse("1/t").unwrap()).unwrap();
        assert!(r.is_zero());
        let ts = parse_tower("t: trans; s: alg s^2 - t").unwrap();
        let d = Derivation::define_str(&ts, &[("t", "1")]).unwrap();
        let s = ts.parse("s").unwrap();
        assert!(leibniz_residual(&d, &s, &s).unwrap().is_zero());
    }

    #[test]
    fn forced_value_annihilates_minpoly() {
        let t = parse_tower("t: trans; a: alg a^3 - t*a - 1; b: alg b^2 - a - t").unwrap();
        let d = Derivation::define_str(&t, &[("t", "t^2 + 1")]).unwrap();
        for (name, poly) in [("a", "a^3 - t*a - 1"), ("b", "b^2 - a - t")] {
            let p = t.parse(poly).unwrap();
            assert!(p.is_zero(), "{name} satisfies its minimal polynomial");
            // d applied along the polynomial expression
            let expanded = match name {
                "a" => "3*a^2*da - t*da - dt*a",
                _ => "2*b*db - da - dt",
            };
            let sub = expanded
                .replace("da", &format!("({})", d.value("a").unwrap()))
                .replace("db", &format!("({})", d.value("b").unwrap()))
                .replace("dt", &format!("({})", d.value("t").unwrap()));
            assert!(t.parse(&sub).unwrap().is_zero(), "{name}: {sub}");
        }
    }
}
