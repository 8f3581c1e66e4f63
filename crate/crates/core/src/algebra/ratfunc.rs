use std::fmt;

use num_traits::{One, Signed, Zero};

use super::gcd::{integer_scale, poly_gcd};
use super::poly::MultiPoly;
use super::rational::Q;
use crate::error::{Error, Result};

/// Quotient of multivariate polynomials in canonical form: coprime,
/// integer coefficients with joint content 1, denominator leading
/// coefficient positive. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn normalize(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc { den: MultiPoly::one(num.vars()), num });
        }
        let g = poly_gcd(&num, &den);
        if g.is_one() {
            return Ok(Self::from_coprime(num, den));
        }
        Ok(Self::from_coprime(
            num.div_exact(&g).expect("gcd divides numerator"),
            den.div_exact(&g).expect("gcd divides denominator"),
        ))
    }

    /// Canonical scaling of a pair already known to be coprime and nonzero.
    pub(crate) fn from_coprime(mut n: MultiPoly, mut d: MultiPoly) -> Self {
        if n.is_zero() {
            return RatFunc { den: MultiPoly::one(n.vars()), num: n };
        }
        let s = integer_scale(&[n.clone(), d.clone()]);
        if d.leading_coeff().is_negative() {
            let s = -s;
            n = n.scale(&s);
            d = d.scale(&s);
        } else if !s.is_one() {
            n = n.scale(&s);
            d = d.scale(&s);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self::normalize(p.clone(), MultiPoly::one(p.vars())).expect("unit denominator")
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::normalize(n, &self.den * &o.den).expect("product of nonzero denominators")
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        Self::normalize(&self.num * &o.num, &self.den * &o.den).expect("product of nonzero denominators")
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::normalize(&self.num * &o.den, &self.den * &o.num)
    }

    /// Partial derivative by the quotient rule.
    pub fn derivative(&self, var: &str) -> Result<RatFunc> {
        let dn = self.num.formal_derivative(var)?;
        let dd = self.den.formal_derivative(var)?;
        let n = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalize(n, &self.den * &self.den)
    }

    pub fn eval(&self, point: &[Q]) -> Result<Q> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::Pole("denominator vanishes".into()));
        }
        Ok(self.num.eval(point) / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = if self.num.num_terms() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let single_plain = self.den.num_terms() == 1 && {
            let (m, c) = self.den.leading().unwrap();
            m.degree() == 0 || (c.is_one() && m.0.iter().filter(|&&e| e > 0).count() == 1)
        };
        if single_plain {
            write!(f, "{}/{}", n, self.den)
        } else {
            write!(f, "{}/({})", n, self.den)
        }
    }
}
