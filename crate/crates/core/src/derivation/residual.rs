//! Symbolic residuals of the classical characterizing equations.
//!
//! Each residual is evaluated on an [`AffineDerivation`] `f = d + slope*id`;
//! it vanishes identically for pure derivations and picks up an explicit
//! multiple of the slope otherwise.

use num_traits::Zero;

use super::Derivation;
use crate::algebra::{MultiPoly, RatFunc, Q};
use crate::error::{Error, Result};
use crate::tower::TowerElement;

/// `f = der + slope * id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineDerivation {
    pub der: Derivation,
    pub slope: Q,
}

impl AffineDerivation {
    pub fn new(der: Derivation, slope: Q) -> Self {
        AffineDerivation { der, slope }
    }

    pub fn pure(der: Derivation) -> Self {
        AffineDerivation { der, slope: Q::zero() }
    }

    pub fn apply(&self, x: &TowerElement) -> Result<TowerElement> {
        self.der.eval(x)?.try_add(&x.scale(&self.slope))
    }
}

fn int(x: &TowerElement, k: i64) -> TowerElement {
    x.tower().int(k)
}

fn checked_pow(x: &TowerElement, k: i64) -> Result<TowerElement> {
    if k < 0 && x.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    x.try_pow(k)
}

/// `f(x^k) - k x^(k-1) f(x)`.
pub fn power_rule_residual(f: &AffineDerivation, k: i64, x: &TowerElement) -> Result<TowerElement> {
    if k == 0 {
        return Err(Error::InvalidArgument("exponent must be nonzero".into()));
    }
    let xk = checked_pow(x, k)?;
    let lhs = f.apply(&xk)?;
    let rhs = int(x, k).try_mul(&checked_pow(x, k - 1)?)?.try_mul(&f.apply(x)?)?;
    lhs.try_sub(&rhs)
}

/// `f(x^n) - x^(n-m) g(x^m)`.
pub fn monomial_residual(
    f: &AffineDerivation,
    g: &AffineDerivation,
    n: i64,
    m: i64,
    x: &TowerElement,
) -> Result<TowerElement> {
    if n == m {
        return Err(Error::InvalidArgument("exponents must differ".into()));
    }
    if f.der.tower() != g.der.tower() {
        return Err(Error::TowerMismatch);
    }
    let lhs = f.apply(&checked_pow(x, n)?)?;
    let rhs = checked_pow(x, n - m)?.try_mul(&g.apply(&checked_pow(x, m)?)?)?;
    lhs.try_sub(&rhs)
}

fn eval_univariate(r: &RatFunc, x: &TowerElement) -> Result<TowerElement> {
    let ev = |p: &MultiPoly| -> Result<TowerElement> {
        let mut acc = x.tower().zero();
        for (m, c) in p.terms() {
            acc = acc.try_add(&x.try_pow(m.0[0] as i64)?.scale(c))?;
        }
        Ok(acc)
    };
    let den = ev(r.denom())?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    ev(r.numer())?.try_div(&den)
}

/// `f(xi(x)) - xi'(x) f(x)` for `xi(x) = (a x^n + b) / (c x^n + dd)`.
pub fn mobius_residual(f: &AffineDerivation, coeffs: [&Q; 4], n: i64, x: &TowerElement) -> Result<TowerElement> {
    let [a, b, c, dd] = coeffs;
    if n == 0 {
        return Err(Error::InvalidArgument("exponent must be nonzero".into()));
    }
    if (a * dd - b * c).is_zero() {
        return Err(Error::InvalidArgument("singular coefficient matrix (ad - bc = 0)".into()));
    }
    if c.is_zero() && dd.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    // For negative n multiply through by x^|n|.
    let vars = MultiPoly::with_vars(&["x"]);
    let xn = MultiPoly::var(&vars, "x")?.pow(n.unsigned_abs() as u32);
    let one = MultiPoly::one(&vars);
    let lin = |p: &Q, q: &Q| -> MultiPoly {
        if n.is_positive() {
            &xn.scale(p) + &one.scale(q)
        } else {
            &one.scale(p) + &xn.scale(q)
        }
    };
    let xi = RatFunc::normalize(lin(a, b), lin(c, dd))?;
    let dxi = xi.derivative("x")?;
    if x.is_zero() && n < 0 {
        return Err(Error::ZeroDenominator);
    }
    let lhs = f.apply(&eval_univariate(&xi, x)?)?;
    lhs.try_sub(&eval_univariate(&dxi, x)?.try_mul(&f.apply(x)?)?)
}

/// `f(x) + x^2 f(1/x)`.
pub fn reflection_residual(f: &AffineDerivation, x: &TowerElement) -> Result<TowerElement> {
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let r = f.apply(&x.inv()?)?;
    f.apply(x)?.try_add(&x.try_mul(x)?.try_mul(&r)?)
}

/// `f(x^2) - 2x f(x)`.
pub fn square_rule_residual(f: &AffineDerivation, x: &TowerElement) -> Result<TowerElement> {
    let lhs = f.apply(&x.try_mul(x)?)?;
    lhs.try_sub(&x.scale(&Q::from_integer(2.into())).try_mul(&f.apply(x)?)?)
}

/// `f(x^n) - f(x)^n`.
pub fn nth_power_hom_residual(f: &AffineDerivation, n: i64, x: &TowerElement) -> Result<TowerElement> {
    if n < 2 {
        return Err(Error::InvalidArgument("exponent must be at least 2".into()));
    }
    f.apply(&x.try_pow(n)?)?.try_sub(&f.apply(x)?.try_pow(n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};
    use crate::tower::{parse_tower, FieldTower};

    fn setup() -> (FieldTower, Derivation, TowerElement) {
        let t = parse_tower("t: trans").unwrap();
        let d = Derivation::define_str(&t, &[("t", "1")]).unwrap();
        let x = t.parse("t").unwrap();
        (t, d, x)
    }

    #[test]
    fn power_rule() {
        let (t, d, x) = setup();
        let chi = AffineDerivation::pure(d.clone());
        assert!(power_rule_residual(&chi, 3, &x).unwrap().is_zero());
        assert!(power_rule_residual(&chi, -2, &x).unwrap().is_zero());
        let id = AffineDerivation::new(Derivation::zero(&t), qi(1));
        assert_eq!(power_rule_residual(&id, 2, &x).unwrap(), t.parse("-t^2").unwrap());
        let mixed = AffineDerivation::new(d, q(3, 2));
        assert!(power_rule_residual(&mixed, 1, &t.parse("t^2 + 1/t").unwrap()).unwrap().is_zero());
        assert_eq!(power_rule_residual(&id, -1, &t.zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn monomial() {
        let (t, d, x) = setup();
        let (n, m) = (3i64, 2i64);
        let chi2 = Derivation::combine(&t.rational(&q(n, m)), &d, &t.zero(), &d).unwrap();
        let r = monomial_residual(&AffineDerivation::pure(d.clone()), &AffineDerivation::pure(chi2), n, m, &x);
        assert!(r.unwrap().is_zero());
        let z = Derivation::zero(&t);
        let f = AffineDerivation::new(z.clone(), qi(1));
        let g = AffineDerivation::pure(z);
        assert_eq!(monomial_residual(&f, &g, 2, 1, &x).unwrap(), t.parse("t^2").unwrap());
        assert!(monomial_residual(&f, &g, 2, 2, &x).is_err());
    }

    #[test]
    fn mobius() {
        let (t, d, x) = setup();
        let chi = AffineDerivation::pure(d);
        let r = mobius_residual(&chi, [&qi(2), &qi(-1), &qi(3), &q(1, 2)], 3, &x).unwrap();
        assert!(r.is_zero());
        let id = AffineDerivation::new(Derivation::zero(&t), qi(1));
        for n in [2i64, 3, -2] {
            let r = mobius_residual(&id, [&qi(1), &qi(0), &qi(0), &qi(1)], n, &x).unwrap();
            let expect = t.parse(&format!("(1 - ({n}))*t^{n}")).unwrap();
            assert_eq!(r, expect, "n = {n}");
        }
        let r = mobius_residual(&id, [&qi(1), &qi(0), &qi(0), &qi(1)], 1, &x).unwrap();
        assert!(r.is_zero());
        assert!(mobius_residual(&id, [&qi(1), &qi(2), &qi(2), &qi(4)], 1, &x).is_err());
    }

    #[test]
    fn reflection_square_nth() {
        let (t, d, x) = setup();
        let chi = AffineDerivation::pure(d.clone());
        let id = AffineDerivation::new(Derivation::zero(&t), qi(1));
        assert!(reflection_residual(&chi, &x).unwrap().is_zero());
        assert_eq!(reflection_residual(&id, &x).unwrap(), t.parse("2*t").unwrap());
        let lam = AffineDerivation::new(d.clone(), q(5, 3));
        assert_eq!(reflection_residual(&lam, &t.one()).unwrap(), t.rational(&q(10, 3)));
        assert!(reflection_residual(&chi, &t.zero()).is_err());

        assert!(square_rule_residual(&chi, &x).unwrap().is_zero());
        assert_eq!(square_rule_residual(&id, &x).unwrap(), t.parse("-t^2").unwrap());
        assert!(square_rule_residual(&lam, &t.zero()).unwrap().is_zero());

        assert!(nth_power_hom_residual(&id, 3, &x).unwrap().is_zero());
        assert_eq!(nth_power_hom_residual(&chi, 2, &x).unwrap(), t.parse("2*t - 1").unwrap());
        // on Q the derivation part vanishes: lambda q^n - lambda^n q^n
        let r = nth_power_hom_residual(&lam, 2, &t.int(3)).unwrap();
        assert_eq!(r.as_rational(), Some(q(5, 3) * qi(9) - q(25, 9) * qi(9)));
    }
}
