//! Carriers on which two-argument maps and functional equations are checked.
//!
//! A [`Domain`] is a commutative ring together with a finite list of points
//! to enumerate. Finite carriers enumerate every element; an integer window
//! enumerates `0, 1, -1, 2, -2, ...` and treats any argument outside the
//! window as an escape; a tower sample enumerates a user-chosen list of
//! field elements.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{FiniteCarrier, Q};
use crate::tower::{FieldTower, TowerElement};

pub trait Domain: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync;

    /// Points to enumerate, in enumeration order.
    fn points(&self) -> Vec<Self::Elem>;
    /// Whether a function defined on this domain may be applied to `x`.
    fn contains(&self, x: &Self::Elem) -> bool;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn describe(&self) -> String;

    fn zero(&self) -> Self::Elem {
        self.from_int(0)
    }
    fn one(&self) -> Self::Elem {
        self.from_int(1)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a == &self.zero()
    }
    /// Integer multiple `n * a`.
    fn scale(&self, n: i64, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.from_int(n), a)
    }
}

/// A partial function on a domain; `None` means undefined at that argument.
pub type UnaryFn<E> = Arc<dyn Fn(&E) -> Option<E> + Send + Sync>;
pub type BinaryFn<E> = Arc<dyn Fn(&E, &E) -> Option<E> + Send + Sync>;

/// Applies `f` after checking the argument lies in the domain.
pub fn apply1<D: Domain>(d: &D, f: &UnaryFn<D::Elem>, x: &D::Elem) -> Option<D::Elem> {
    if d.contains(x) {
        f(x)
    } else {
        None
    }
}

pub fn apply2<D: Domain>(d: &D, f: &BinaryFn<D::Elem>, x: &D::Elem, y: &D::Elem) -> Option<D::Elem> {
    if d.contains(x) && d.contains(y) {
        f(x, y)
    } else {
        None
    }
}

/// Tabulates a unary function over a finite carrier.
pub fn tabulate(c: &FiniteCarrier, f: &UnaryFn<u64>) -> Option<Vec<u64>> {
    c.elements().map(|x| f(&x)).collect()
}

/// `x -> f(x)` lines over the domain's points; undefined points are omitted.
pub fn format_table<D: Domain>(d: &D, f: &UnaryFn<D::Elem>) -> String {
    d.points()
        .iter()
        .filter_map(|x| f(x).map(|y| format!("{x} -> {y}\n")))
        .collect()
}

impl Domain for FiniteCarrier {
    type Elem = u64;

    fn points(&self) -> Vec<u64> {
        self.elements().collect()
    }
    fn contains(&self, x: &u64) -> bool {
        *x < self.modulus()
    }
    fn from_int(&self, n: i64) -> u64 {
        self.reduce(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        FiniteCarrier::add(self, *a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        FiniteCarrier::mul(self, *a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        FiniteCarrier::neg(self, *a)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        FiniteCarrier::inv(self, *a)
    }
    fn characteristic(&self) -> u64 {
        self.modulus()
    }
    fn describe(&self) -> String {
        self.to_string()
    }
}

/// The integers `lo..=hi` inside Q. Arithmetic is exact in Q; functions only
/// accept integer arguments inside the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerWindow {
    pub lo: i64,
    pub hi: i64,
}

impl IntegerWindow {
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty window");
        IntegerWindow { lo, hi }
    }

    /// Symmetric window `-r..=r`.
    pub fn symmetric(r: i64) -> Self {
        Self::new(-r, r)
    }

    /// The integer value of a window element, if it is one.
    pub fn as_int(x: &Q) -> Option<i64> {
        if x.is_integer() {
            i64::try_from(x.to_integer()).ok()
        } else {
            None
        }
    }
}

impl Domain for IntegerWindow {
    type Elem = Q;

    fn points(&self) -> Vec<Q> {
        let mut v = vec![];
        if self.contains(&Q::zero()) {
            v.push(Q::zero());
        }
        let r = self.hi.abs().max(self.lo.abs());
        for k in 1..=r {
            for x in [k, -k] {
                if self.lo <= x && x <= self.hi {
                    v.push(Q::from_integer(BigInt::from(x)));
                }
            }
        }
        v
    }
    fn contains(&self, x: &Q) -> bool {
        Self::as_int(x).map_or(false, |n| self.lo <= n && n <= self.hi)
    }
    fn from_int(&self, n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn inv(&self, a: &Q) -> Option<Q> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn describe(&self) -> String {
        format!("Z[{}..{}]", self.lo, self.hi)
    }
}

/// A finite sample of elements of a field tower.
#[derive(Clone, Debug)]
pub struct TowerSample {
    pub tower: FieldTower,
    pub points: Vec<TowerElement>,
}

impl Domain for TowerSample {
    type Elem = TowerElement;

    fn points(&self) -> Vec<TowerElement> {
        self.points.clone()
    }
    fn contains(&self, x: &TowerElement) -> bool {
        x.tower() == &self.tower
    }
    fn from_int(&self, n: i64) -> TowerElement {
        self.tower.int(n)
    }
    fn add(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        a + b
    }
    fn mul(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        a * b
    }
    fn neg(&self, a: &TowerElement) -> TowerElement {
        -a
    }
    fn inv(&self, a: &TowerElement) -> Option<TowerElement> {
        a.inv().ok()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn describe(&self) -> String {
        format!("{} sample of {} points", self.tower, self.points.len())
    }
}

/// Parses `gf:P`, `zmod:N`, or `window:LO:HI` into one of the domain kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CarrierSpec {
    Finite(FiniteCarrier),
    Window(IntegerWindow),
}

impl std::str::FromStr for CarrierSpec {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        if let Some(rest) = s.strip_prefix("window:") {
            let bad = || crate::Error::Parse(format!("window `{s}`: expected window:LO:HI"));
            let (lo, hi) = rest.rsplit_once(':').ok_or_else(bad)?;
            let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            return Ok(CarrierSpec::Window(IntegerWindow::new(lo, hi)));
        }
        Ok(CarrierSpec::Finite(s.parse()?))
    }
}

/// `1` on even integers and `0` on odd ones; on `Z/n` with `n` even the
/// parity of the residue is well defined.
pub fn parity(x: &Q) -> Option<Q> {
    let n = IntegerWindow::as_int(x)?;
    Some(if n % 2 == 0 { Q::one() } else { Q::zero() })
}

/// Sign of an integer window element: -1, 0 or 1.
pub fn sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qi;

    #[test]
    fn window_order_and_escape() {
        let w = IntegerWindow::new(-2, 3);
        assert_eq!(w.points(), vec![qi(0), qi(1), qi(-1), qi(2), qi(-2), qi(3)]);
        assert!(!w.contains(&qi(4)));
        assert!(!w.contains(&crate::algebra::q(1, 2)));
        let f: UnaryFn<Q> = Arc::new(|x| Some(x * x));
        assert_eq!(apply1(&w, &f, &qi(5)), None);
        assert_eq!(apply1(&w, &f, &qi(-2)), Some(qi(4)));
    }

    #[test]
    fn finite_ring_ops() {
        let c = FiniteCarrier::zmod(6).unwrap();
        assert_eq!(Domain::inv(&c, &2), None);
        assert_eq!(c.from_int(-1), 5);
        assert_eq!(Domain::sub(&c, &1, &4), 3);
        assert_eq!(c.characteristic(), 6);
    }

    #[test]
    fn carrier_spec_parse() {
        assert_eq!("window:-3:4".parse::<CarrierSpec>().unwrap(), CarrierSpec::Window(IntegerWindow::new(-3, 4)));
        assert!(matches!("gf:5".parse::<CarrierSpec>().unwrap(), CarrierSpec::Finite(_)));
        assert!("window:4:-3".parse::<CarrierSpec>().is_err());
    }

    #[test]
    fn parity_table() {
        let w = IntegerWindow::symmetric(2);
        let f: UnaryFn<Q> = Arc::new(parity);
        assert_eq!(format_table(&w, &f), "0 -> 1\n1 -> 0\n-1 -> 0\n2 -> 1\n-2 -> 1\n");
    }
}
