//! Multivariate polynomial gcd over Q.
//!
//! Recursive: pick the first variable occurring in either input, split off
//! the content (gcd of coefficients, recursively), run a subresultant
//! remainder sequence on the primitive parts, and take the primitive part of
//! the last nonzero remainder.

use num_traits::{One, Signed, Zero};

use super::poly::MultiPoly;
use super::rational::Q;

type Up = Vec<MultiPoly>;

fn trim(p: &mut Up) {
    while p.last().map_or(false, MultiPoly::is_zero) {
        p.pop();
    }
}

fn deg(p: &Up) -> usize {
    p.len() - 1
}

fn up_sub(a: &Up, b: &Up) -> Up {
    let n = a.len().max(b.len());
    let zero = a.first().or(b.first()).map(|p| MultiPoly::zero(p.vars())).unwrap();
    let mut out: Up = (0..n)
        .map(|i| {
            let x = a.get(i).unwrap_or(&zero);
            let y = b.get(i).unwrap_or(&zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

fn up_scale(a: &Up, c: &MultiPoly) -> Up {
    let mut out: Up = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

fn up_shift(a: &Up, k: usize) -> Up {
    let zero = MultiPoly::zero(a[0].vars());
    let mut out = vec![zero; k];
    out.extend(a.iter().cloned());
    out
}

fn up_div_exact(a: &Up, c: &MultiPoly) -> Up {
    a.iter()
        .map(|x| x.div_exact(c).expect("subresultant division is exact"))
        .collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &Up, b: &Up) -> Up {
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    let mut e = (deg(a) + 1).saturating_sub(deg(b));
    while !r.is_empty() && r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = deg(&r) - deg(b);
        let t = up_shift(&up_scale(b, &lr), shift);
        r = up_sub(&up_scale(&r, &lb), &t);
        e -= 1;
    }
    for _ in 0..e {
        r = up_scale(&r, &lb);
    }
    r
}

fn content(p: &Up) -> MultiPoly {
    let mut g = MultiPoly::zero(p[0].vars());
    for c in p {
        g = poly_gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Rescales to integer coefficients with unit content and a positive leading coefficient.
pub(crate) fn normalize_unit(p: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let s = integer_scale(std::slice::from_ref(p));
    let out = p.scale(&s);
    if out.leading_coeff().is_negative() {
        -&out
    } else {
        out
    }
}

/// The positive rational `s` such that every `s * p` has integer coefficients
/// whose joint gcd is 1.
pub(crate) fn integer_scale(ps: &[MultiPoly]) -> Q {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for p in ps {
        for (_, c) in p.terms() {
            lcm = lcm.lcm(c.denom());
        }
    }
    let mut g = BigInt::zero();
    for p in ps {
        for (_, c) in p.terms() {
            let n = c.numer() * (&lcm / c.denom());
            g = g.gcd(&n);
        }
    }
    if g.is_zero() {
        return Q::one();
    }
    Q::new(lcm, g)
}

/// Greatest common divisor, normalized to integer coefficients with unit
/// content and positive leading coefficient. `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return normalize_unit(b);
    }
    if b.is_zero() {
        return normalize_unit(a);
    }
    let nv = a.nvars();
    let main = (0..nv).find(|&i| a.degree_in(i).unwrap_or(0) > 0 || b.degree_in(i).unwrap_or(0) > 0);
    let Some(v) = main else {
        return MultiPoly::one(a.vars());
    };
    let vars = a.vars().clone();
    let a_up = a.coeffs_in(v);
    let b_up = b.coeffs_in(v);
    if a_up.len() == 1 {
        return poly_gcd(a, &content(&b_up));
    }
    if b_up.len() == 1 {
        return poly_gcd(&content(&a_up), b);
    }
    let ca = content(&a_up);
    let cb = content(&b_up);
    let c = poly_gcd(&ca, &cb);
    let mut x = up_div_exact(&a_up, &ca);
    let mut y = up_div_exact(&b_up, &cb);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }

    let one = MultiPoly::one(&vars);
    let mut g = one.clone();
    let mut h = one.clone();
    let last = loop {
        let delta = deg(&x) - deg(&y);
        let r = prem(&x, &y);
        if r.is_empty() {
            break y;
        }
        if r.len() == 1 {
            break vec![one.clone()];
        }
        x = y;
        let div = &g * &h.pow(delta as u32);
        y = up_div_exact(&r, &div);
        g = x.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta as u32);
            num.div_exact(&h.pow(delta as u32 - 1)).expect("subresultant h update is exact")
        };
    };
    let pp = up_div_exact(&last, &content(&last));
    normalize_unit(&(&c * &MultiPoly::from_coeffs_in(&vars, v, &pp)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qi;
    use std::sync::Arc;

    fn vars3() -> Arc<Vec<String>> {
        MultiPoly::with_vars(&["x", "y", "z"])
    }

    #[test]
    fn univariate_gcd() {
        let v = MultiPoly::with_vars(&["x"]);
        let x = MultiPoly::var(&v, "x").unwrap();
        let one = MultiPoly::one(&v);
        let a = &x.pow(2) - &one;
        let b = &x - &one;
        assert_eq!(poly_gcd(&a, &b), b);
        let c = &x + &one;
        assert!(poly_gcd(&b, &c).is_one());
        assert_eq!(poly_gcd(&a.scale(&qi(-6)), &MultiPoly::zero(&v)), a);
    }

    #[test]
    fn multivariate_common_factor() {
        let v = vars3();
        let x = MultiPoly::var(&v, "x").unwrap();
        let y = MultiPoly::var(&v, "y").unwrap();
        let z = MultiPoly::var(&v, "z").unwrap();
        let f = &(&x * &y) + &z;
        let a = &f * &(&x.pow(2) - &y);
        let b = &f * &(&(&y * &z) + &x.pow(3));
        let g = poly_gcd(&a, &b);
        assert_eq!(g, f);
        let a2 = &a * &f;
        let b2 = &b * &(&f * &z);
        assert_eq!(poly_gcd(&a2, &b2), &f * &f);
    }

    #[test]
    fn constant_gcd_is_one() {
        let v = vars3();
        let x = MultiPoly::var(&v, "x").unwrap();
        assert!(poly_gcd(&x, &MultiPoly::constant(&v, qi(4))).is_one());
    }
}
