//! Helpers shared by the integration tests: seeded randomness, small dense
//! polynomial arithmetic used as an independent oracle, and renderers that
//! turn random data into expression text.

#![allow(dead_code)]

use dercalc_core::Q;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense(pub Vec<Q>);

impl Dense {
    pub fn trim(mut v: Vec<Q>) -> Dense {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        Dense(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &Dense) -> Dense {
        let n = self.0.len().max(o.0.len());
        let z = Q::zero();
        Dense::trim((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> Dense {
        Dense(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Dense) -> Dense {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        if self.is_zero() || o.is_zero() {
            return Dense(vec![]);
        }
        let mut v = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Dense::trim(v)
    }

    /// Term-by-term formal derivative.
    pub fn diff(&self) -> Dense {
        Dense::trim(self.0.iter().enumerate().skip(1).map(|(i, c)| c * qi(i as i64)).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `(c0) + (c1)*t^1 + ...`, parseable by the expression grammar.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if i == 0 { format!("({c})") } else { format!("({c})*{var}^{i}") })
            .collect();
        terms.join(" + ")
    }

    pub fn one() -> Dense {
        Dense(vec![Q::one()])
    }
}

pub fn small_int(rng: &mut ChaCha8Rng, r: i64) -> i64 {
    rng.gen_range(-r..=r)
}

/// Random nonzero polynomial of degree at most `deg` with small integer coefficients.
pub fn rand_dense(rng: &mut ChaCha8Rng, deg: usize) -> Dense {
    loop {
        let d = rng.gen_range(0..=deg);
        let v: Vec<Q> = (0..=d).map(|_| qi(small_int(rng, 9))).collect();
        let p = Dense::trim(v);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random nonconstant polynomial of degree at most `deg`.
pub fn rand_nonconstant(rng: &mut ChaCha8Rng, deg: usize) -> Dense {
    loop {
        let p = rand_dense(rng, deg.max(1));
        if p.0.len() >= 2 {
            return p;
        }
    }
}

/// Random element text `(a0 + a1*s)/(b0 + b1*s)` over Q(t), with `b0 != 0` so
/// the denominator is nonzero whenever `s` has degree 2 over Q(t).
pub fn rand_ts_element(rng: &mut ChaCha8Rng, deg: usize) -> String {
    let a0 = rand_dense(rng, deg).render("t");
    let a1 = rand_dense(rng, deg).render("t");
    let b0 = rand_dense(rng, deg).render("t");
    let b1 = if rng.gen_bool(0.5) { rand_dense(rng, deg).render("t") } else { "0".into() };
    format!("(({a0}) + ({a1})*s)/(({b0}) + ({b1})*s)")
}

/// Random nonzero rational function text in `t`.
pub fn rand_ratfunc(rng: &mut ChaCha8Rng, deg: usize) -> String {
    format!("({})/({})", rand_dense(rng, deg).render("t"), rand_dense(rng, deg).render("t"))
}
