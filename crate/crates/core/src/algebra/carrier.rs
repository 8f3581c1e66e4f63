use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const DEFAULT_CARRIER_BUDGET: u64 = 257;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CarrierKind {
    ZMod,
    PrimeField,
}

/// `Z/nZ` or `GF(p)`; elements are the canonical residues `0..modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteCarrier {
    kind: CarrierKind,
    modulus: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteCarrier {
    pub fn gf(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(FiniteCarrier { kind: CarrierKind::PrimeField, modulus: p })
    }

    pub fn zmod(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        Ok(FiniteCarrier { kind: CarrierKind::ZMod, modulus: n })
    }

    pub fn kind(&self) -> CarrierKind {
        self.kind
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_field(&self) -> bool {
        is_prime(self.modulus)
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b % self.modulus) % self.modulus
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.modulus - a % self.modulus) % self.modulus
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        let mut base = a % self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm; `None` for non-units.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let (mut r0, mut r1) = (self.modulus as i128, (a % self.modulus) as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        (r0 == 1).then(|| s0.rem_euclid(self.modulus as i128) as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.modulus
    }

    pub fn units(&self) -> Vec<u64> {
        self.elements().filter(|&x| self.inv(x).is_some()).collect()
    }
}

impl fmt::Display for FiniteCarrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CarrierKind::PrimeField => write!(f, "GF({})", self.modulus),
            CarrierKind::ZMod => write!(f, "Z/{}", self.modulus),
        }
    }
}

impl FromStr for FiniteCarrier {
    type Err = Error;

    /// `gf:P` or `zmod:N`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, n) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("carrier `{s}`: expected gf:P or zmod:N")))?;
        let n: u64 = n.trim().parse().map_err(|_| Error::Parse(format!("carrier modulus `{n}`")))?;
        match kind.trim() {
            "gf" => Self::gf(n),
            "zmod" => Self::zmod(n),
            other => Err(Error::Parse(format!("unknown carrier kind `{other}`"))),
        }
    }
}

/// Complete operation tables of a finite carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarrierTable {
    pub carrier: FiniteCarrier,
    pub elements: Vec<u64>,
    pub add: Vec<Vec<u64>>,
    pub mul: Vec<Vec<u64>>,
    pub inverse: Vec<Option<u64>>,
}

pub fn carrier_table(c: &FiniteCarrier, budget: u64) -> Result<CarrierTable> {
    if c.modulus > budget {
        return Err(Error::BudgetExceeded { needed: c.modulus as u128, budget });
    }
    let elements: Vec<u64> = c.elements().collect();
    let table = |op: &dyn Fn(u64, u64) -> u64| -> Vec<Vec<u64>> {
        elements.iter().map(|&a| elements.iter().map(|&b| op(a, b)).collect()).collect()
    };
    Ok(CarrierTable {
        carrier: *c,
        add: table(&|a, b| c.add(a, b)),
        mul: table(&|a, b| c.mul(a, b)),
        inverse: elements.iter().map(|&a| c.inv(a)).collect(),
        elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_examples() {
        let t = carrier_table(&FiniteCarrier::gf(3).unwrap(), DEFAULT_CARRIER_BUDGET).unwrap();
        assert_eq!(t.elements, vec![0, 1, 2]);
        assert_eq!(t.mul[2][2], 1);
        let t = carrier_table(&FiniteCarrier::zmod(6).unwrap(), DEFAULT_CARRIER_BUDGET).unwrap();
        assert_eq!(t.inverse[2], None);
        assert_eq!(t.inverse[5], Some(5));
        let t = carrier_table(&FiniteCarrier::gf(5).unwrap(), DEFAULT_CARRIER_BUDGET).unwrap();
        assert_eq!(t.inverse[3], Some(2));
    }

    #[test]
    fn budget_and_primality() {
        assert!(FiniteCarrier::gf(6).is_err());
        let big = FiniteCarrier::gf(263).unwrap();
        assert!(matches!(carrier_table(&big, DEFAULT_CARRIER_BUDGET), Err(Error::BudgetExceeded { .. })));
        assert_eq!("gf:7".parse::<FiniteCarrier>().unwrap(), FiniteCarrier::gf(7).unwrap());
        assert!("gf:x".parse::<FiniteCarrier>().is_err());
    }

    #[test]
    fn every_unit_inverts() {
        for p in [2u64, 3, 5, 7, 11, 13, 251] {
            let c = FiniteCarrier::gf(p).unwrap();
            for u in 1..p {
                assert_eq!(c.mul(u, c.inv(u).unwrap()), 1);
            }
        }
    }
}
