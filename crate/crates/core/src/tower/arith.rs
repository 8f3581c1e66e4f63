//! Recursive canonical arithmetic on tower levels.
//!
//! Level 0 is Q. A transcendental level holds a reduced fraction `num/den`
//! of polynomials in its generator over the level below, with `den` monic.
//! An algebraic level holds a polynomial in its generator of degree below
//! the minimal polynomial's degree. Coefficient vectors are lowest power
//! first with no trailing zeros, so structural equality is field equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::Q;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Val {
    Q(Q),
    Frac(Vec<Val>, Vec<Val>),
    Poly(Vec<Val>),
}

#[derive(Clone, Debug)]
pub(crate) struct Gen {
    pub name: String,
    pub kind: GenKind,
}

#[derive(Clone, Debug)]
pub(crate) enum GenKind {
    Trans,
    /// Monic; coefficients live one level down; `len() == degree + 1`.
    Alg(Vec<Val>),
}

type Up = Vec<Val>;

fn split(gens: &[Gen]) -> Option<(&[Gen], &Gen)> {
    gens.split_last().map(|(g, lower)| (lower, g))
}

pub(crate) fn zero(gens: &[Gen]) -> Val {
    match split(gens) {
        None => Val::Q(Q::zero()),
        Some((lower, g)) => match g.kind {
            GenKind::Trans => Val::Frac(vec![], vec![one(lower)]),
            GenKind::Alg(_) => Val::Poly(vec![]),
        },
    }
}

pub(crate) fn one(gens: &[Gen]) -> Val {
    from_q(gens, &Q::one())
}

pub(crate) fn from_q(gens: &[Gen], q: &Q) -> Val {
    match split(gens) {
        None => Val::Q(q.clone()),
        Some((lower, g)) => {
            if q.is_zero() {
                return zero(gens);
            }
            let c = from_q(lower, q);
            match g.kind {
                GenKind::Trans => Val::Frac(vec![c], vec![one(lower)]),
                GenKind::Alg(_) => Val::Poly(vec![c]),
            }
        }
    }
}

pub(crate) fn is_zero(v: &Val) -> bool {
    match v {
        Val::Q(x) => x.is_zero(),
        Val::Frac(n, _) => n.is_empty(),
        Val::Poly(c) => c.is_empty(),
    }
}

/// The element of `Q` if `v` lies in the prime field.
pub(crate) fn as_rational(v: &Val) -> Option<Q> {
    match v {
        Val::Q(x) => Some(x.clone()),
        Val::Frac(n, d) => {
            if n.is_empty() {
                return Some(Q::zero());
            }
            if n.len() == 1 && d.len() == 1 {
                let a = as_rational(&n[0])?;
                let b = as_rational(&d[0])?;
                Some(a / b)
            } else {
                None
            }
        }
        Val::Poly(c) => match c.len() {
            0 => Some(Q::zero()),
            1 => as_rational(&c[0]),
            _ => None,
        },
    }
}

/// Embeds a value of level `gens.len() - 1` into level `gens.len()`.
pub(crate) fn lift(gens: &[Gen], v: Val) -> Val {
    let (lower, g) = split(gens).expect("lift needs a generator");
    let nz = !is_zero(&v);
    match g.kind {
        GenKind::Trans => Val::Frac(if nz { vec![v] } else { vec![] }, vec![one(lower)]),
        GenKind::Alg(_) => Val::Poly(if nz { vec![v] } else { vec![] }),
    }
}

/// Embeds a value of level `from` into level `gens.len()`.
pub(crate) fn lift_to(gens: &[Gen], from: usize, mut v: Val) -> Val {
    for k in from + 1..=gens.len() {
        v = lift(&gens[..k], v);
    }
    v
}

/// The generator of level `gens.len()` as an element of that level.
pub(crate) fn generator(gens: &[Gen]) -> Val {
    let (lower, g) = split(gens).expect("generator needs a level");
    let x = vec![zero(lower), one(lower)];
    match g.kind {
        GenKind::Trans => Val::Frac(x, vec![one(lower)]),
        GenKind::Alg(_) => Val::Poly(x),
    }
}

pub(crate) fn neg(gens: &[Gen], v: &Val) -> Val {
    match (split(gens), v) {
        (None, Val::Q(x)) => Val::Q(-x),
        (Some((lower, _)), Val::Frac(n, d)) => Val::Frac(up_neg(lower, n), d.clone()),
        (Some((lower, _)), Val::Poly(c)) => Val::Poly(up_neg(lower, c)),
        _ => unreachable!("value does not match its level"),
    }
}

pub(crate) fn add(gens: &[Gen], a: &Val, b: &Val) -> Result<Val> {
    match (split(gens), a, b) {
        (None, Val::Q(x), Val::Q(y)) => Ok(Val::Q(x + y)),
        (Some((lower, _)), Val::Frac(n1, d1), Val::Frac(n2, d2)) => {
            if n1.is_empty() {
                return Ok(b.clone());
            }
            if n2.is_empty() {
                return Ok(a.clone());
            }
            if d1 == d2 {
                let n = up_add(lower, n1, n2)?;
                if d1.len() == 1 {
                    return Ok(Val::Frac(n, d1.clone()));
                }
                return normalize_frac(lower, n, d1.clone());
            }
            // With g = gcd(d1, d2), n1/d1 + n2/d2 = (n1 d2' + n2 d1') / (d1' d2' g),
            // and only g can still share factors with the new numerator.
            let g = up_gcd(lower, d1, d2)?;
            if g.len() == 1 {
                let n = up_add(lower, &up_mul(lower, n1, d2)?, &up_mul(lower, n2, d1)?)?;
                return monic_frac(lower, n, up_mul(lower, d1, d2)?);
            }
            let d1r = up_divrem(lower, d1, &g)?.0;
            let d2r = up_divrem(lower, d2, &g)?.0;
            let n = up_add(lower, &up_mul(lower, n1, &d2r)?, &up_mul(lower, n2, &d1r)?)?;
            if n.is_empty() {
                return Ok(zero(gens));
            }
            let h = up_gcd(lower, &n, &g)?;
            let (n, g) = if h.len() > 1 { (up_divrem(lower, &n, &h)?.0, up_divrem(lower, &g, &h)?.0) } else { (n, g) };
            let d = up_mul(lower, &up_mul(lower, &d1r, &d2r)?, &g)?;
            monic_frac(lower, n, d)
        }
        (Some((lower, _)), Val::Poly(c1), Val::Poly(c2)) => Ok(Val::Poly(up_add(lower, c1, c2)?)),
        _ => unreachable!("value does not match its level"),
    }
}

pub(crate) fn sub(gens: &[Gen], a: &Val, b: &Val) -> Result<Val> {
    add(gens, a, &neg(gens, b))
}

pub(crate) fn mul(gens: &[Gen], a: &Val, b: &Val) -> Result<Val> {
    match (split(gens), a, b) {
        (None, Val::Q(x), Val::Q(y)) => Ok(Val::Q(x * y)),
        (Some((lower, _)), Val::Frac(n1, d1), Val::Frac(n2, d2)) => {
            if n1.is_empty() || n2.is_empty() {
                return Ok(zero(gens));
            }
            // Cross cancellation keeps the gcds small: both inputs are reduced.
            let (n1, d2) = cancel(lower, n1, d2)?;
            let (n2, d1) = cancel(lower, n2, d1)?;
            let n = up_mul(lower, &n1, &n2)?;
            let d = up_mul(lower, &d1, &d2)?;
            monic_frac(lower, n, d)
        }
        (Some((lower, g)), Val::Poly(c1), Val::Poly(c2)) => {
            let GenKind::Alg(m) = &g.kind else { unreachable!() };
            let p = up_mul(lower, c1, c2)?;
            Ok(Val::Poly(up_rem_monic(lower, &p, m)?))
        }
        _ => unreachable!("value does not match its level"),
    }
}

pub(crate) fn inv(gens: &[Gen], a: &Val) -> Result<Val> {
    if is_zero(a) {
        return Err(Error::DivisionByZero);
    }
    match (split(gens), a) {
        (None, Val::Q(x)) => Ok(Val::Q(x.recip())),
        (Some((lower, _)), Val::Frac(n, d)) => normalize_frac(lower, d.clone(), n.clone()),
        (Some((lower, g)), Val::Poly(c)) => {
            let GenKind::Alg(m) = &g.kind else { unreachable!() };
            let (r, s) = up_ext_gcd(lower, m, c)?;
            if r.len() > 1 {
                return Err(Error::ZeroDivisor(g.name.clone()));
            }
            let r0 = inv(lower, &r[0])?;
            Ok(Val::Poly(up_scale(lower, &s, &r0)?))
        }
        _ => unreachable!("value does not match its level"),
    }
}

pub(crate) fn div(gens: &[Gen], a: &Val, b: &Val) -> Result<Val> {
    mul(gens, a, &inv(gens, b)?)
}

pub(crate) fn pow(gens: &[Gen], a: &Val, e: i64) -> Result<Val> {
    let base = if e < 0 { inv(gens, a)? } else { a.clone() };
    let mut e = e.unsigned_abs();
    let mut acc = one(gens);
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(gens, &acc, &b)?;
        }
        e >>= 1;
        if e > 0 {
            b = mul(gens, &b, &b)?;
        }
    }
    Ok(acc)
}

fn normalize_frac(lower: &[Gen], n: Up, d: Up) -> Result<Val> {
    if n.is_empty() {
        return Ok(Val::Frac(vec![], vec![one(lower)]));
    }
    if d.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let g = up_gcd(lower, &n, &d)?;
    let (n, d) = if g.len() > 1 {
        (up_divrem(lower, &n, &g)?.0, up_divrem(lower, &d, &g)?.0)
    } else {
        (n, d)
    };
    monic_frac(lower, n, d)
}

/// `a / g` and `b / g` for `g = gcd(a, b)`.
fn cancel(lower: &[Gen], a: &Up, b: &Up) -> Result<(Up, Up)> {
    if b.len() == 1 || a.len() == 1 {
        return Ok((a.clone(), b.clone()));
    }
    let g = up_gcd(lower, a, b)?;
    if g.len() == 1 {
        return Ok((a.clone(), b.clone()));
    }
    Ok((up_divrem(lower, a, &g)?.0, up_divrem(lower, b, &g)?.0))
}

/// Scales a coprime pair so the denominator is monic.
fn monic_frac(lower: &[Gen], n: Up, d: Up) -> Result<Val> {
    let c = inv(lower, d.last().unwrap())?;
    if c == one(lower) {
        return Ok(Val::Frac(n, d));
    }
    Ok(Val::Frac(up_scale(lower, &n, &c)?, up_scale(lower, &d, &c)?))
}

// ---- univariate polynomials over a lower level -------------------------

fn up_trim(mut p: Up) -> Up {
    while p.last().map_or(false, is_zero) {
        p.pop();
    }
    p
}

fn up_neg(lower: &[Gen], a: &Up) -> Up {
    a.iter().map(|c| neg(lower, c)).collect()
}

pub(crate) fn up_add(lower: &[Gen], a: &Up, b: &Up) -> Result<Up> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => add(lower, x, y)?,
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        });
    }
    Ok(up_trim(out))
}

pub(crate) fn up_sub(lower: &[Gen], a: &Up, b: &Up) -> Result<Up> {
    up_add(lower, a, &up_neg(lower, b))
}

pub(crate) fn up_mul(lower: &[Gen], a: &Up, b: &Up) -> Result<Up> {
    if a.is_empty() || b.is_empty() {
        return Ok(vec![]);
    }
    let mut out = vec![zero(lower); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = mul(lower, x, y)?;
            out[i + j] = add(lower, &out[i + j], &t)?;
        }
    }
    Ok(up_trim(out))
}

pub(crate) fn up_scale(lower: &[Gen], a: &Up, c: &Val) -> Result<Up> {
    let out = a.iter().map(|x| mul(lower, x, c)).collect::<Result<Vec<_>>>()?;
    Ok(up_trim(out))
}

/// Remainder modulo a monic polynomial; no inversions needed.
fn up_rem_monic(lower: &[Gen], a: &Up, m: &Up) -> Result<Up> {
    let dm = m.len() - 1;
    let mut r = a.clone();
    while r.len() > dm {
        let lc = r.pop().unwrap();
        let shift = r.len() - dm;
        for (i, c) in m[..dm].iter().enumerate() {
            let t = mul(lower, &lc, c)?;
            r[shift + i] = sub(lower, &r[shift + i], &t)?;
        }
        r = up_trim(r);
    }
    Ok(r)
}

pub(crate) fn up_divrem(lower: &[Gen], a: &Up, b: &Up) -> Result<(Up, Up)> {
    let lb = inv(lower, b.last().ok_or(Error::DivisionByZero)?)?;
    let db = b.len() - 1;
    let mut r = a.clone();
    if r.len() <= db {
        return Ok((vec![], r));
    }
    let mut q = vec![zero(lower); r.len() - db];
    while r.len() > db {
        let lc = r.last().unwrap().clone();
        let c = mul(lower, &lc, &lb)?;
        let shift = r.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            let t = mul(lower, &c, bc)?;
            r[shift + i] = sub(lower, &r[shift + i], &t)?;
        }
        // the leading coefficient cancels exactly
        r.pop();
        q[shift] = c;
        r = up_trim(r);
    }
    Ok((up_trim(q), r))
}

/// Monic gcd.
pub(crate) fn up_gcd(lower: &[Gen], a: &Up, b: &Up) -> Result<Up> {
    if lower.is_empty() && !a.is_empty() && !b.is_empty() {
        return Ok(q_gcd(a, b));
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = up_divrem(lower, &x, &y)?.1;
        x = y;
        y = r;
    }
    if x.is_empty() {
        return Ok(x);
    }
    let c = inv(lower, x.last().unwrap())?;
    up_scale(lower, &x, &c)
}

fn q_coeff(v: &Val) -> &Q {
    match v {
        Val::Q(x) => x,
        _ => unreachable!("level-0 coefficient"),
    }
}

/// Integer polynomial with content 1, lowest power first.
fn primitive_int(c: impl Iterator<Item = BigInt> + Clone) -> Vec<BigInt> {
    let g = c.clone().fold(BigInt::zero(), |g, x| g.gcd(&x));
    let mut v: Vec<BigInt> = if g.is_zero() || g.is_one() { c.collect() } else { c.map(|x| x / &g).collect() };
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Monic gcd over Q by a primitive remainder sequence over Z, which keeps
/// coefficients small where plain Euclid over Q blows up.
fn q_gcd(a: &Up, b: &Up) -> Up {
    let to_int = |p: &Up| {
        let l = p.iter().fold(BigInt::one(), |l, v| l.lcm(q_coeff(v).denom()));
        primitive_int(p.iter().map(move |v| {
            let q = q_coeff(v);
            q.numer() * (&l / q.denom())
        }))
    };
    let (mut x, mut y) = (to_int(a), to_int(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let ly = y.last().unwrap().clone();
        let mut r = x;
        while r.len() >= y.len() {
            let lr = r.pop().unwrap();
            let shift = r.len() + 1 - y.len();
            for c in r.iter_mut() {
                *c *= &ly;
            }
            for (i, yc) in y[..y.len() - 1].iter().enumerate() {
                r[shift + i] -= &lr * yc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        x = y;
        y = primitive_int(r.into_iter());
    }
    let lc = Q::from_integer(x.last().unwrap().clone());
    x.into_iter().map(|c| Val::Q(Q::from_integer(c) / &lc)).collect()
}

/// Returns `(r, s)` with `s * b ≡ r (mod a)` and `r` the last nonzero remainder.
fn up_ext_gcd(lower: &[Gen], a: &Up, b: &Up) -> Result<(Up, Up)> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Up, Up) = (vec![], vec![one(lower)]);
    while !r1.is_empty() {
        let (q, r) = up_divrem(lower, &r0, &r1)?;
        let s = up_sub(lower, &s0, &up_mul(lower, &q, &s1)?)?;
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    Ok((r0, s0))
}

pub(crate) fn up_derivative(lower: &[Gen], a: &Up) -> Result<Up> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| mul(lower, c, &from_q(lower, &Q::from_integer((i as i64).into()))))
        .collect::<Result<Vec<_>>>()?;
    Ok(up_trim(out))
}

/// Degree of `gcd(p, p')`; zero means square-free.
pub(crate) fn squarefree_defect(lower: &[Gen], p: &Up) -> Result<usize> {
    let dp = up_derivative(lower, p)?;
    let g = up_gcd(lower, p, &dp)?;
    Ok(g.len().saturating_sub(1))
}

/// Substitutes rational values for every generator.
pub(crate) fn substitute(gens: &[Gen], v: &Val, values: &[Q]) -> Result<Q> {
    let eval_up = |lower: &[Gen], c: &Up, x: &Q| -> Result<Q> {
        let mut acc = Q::zero();
        for coeff in c.iter().rev() {
            acc = acc * x + substitute(lower, coeff, values)?;
        }
        Ok(acc)
    };
    match (split(gens), v) {
        (None, Val::Q(x)) => Ok(x.clone()),
        (Some((lower, g)), Val::Frac(n, d)) => {
            let x = &values[lower.len()];
            let den = eval_up(lower, d, x)?;
            if den.is_zero() {
                return Err(Error::Pole(format!("denominator vanishes at {} = {}", g.name, x)));
            }
            Ok(eval_up(lower, n, x)? / den)
        }
        (Some((lower, _)), Val::Poly(c)) => eval_up(lower, c, &values[lower.len()]),
        _ => unreachable!("value does not match its level"),
    }
}
