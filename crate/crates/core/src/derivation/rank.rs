//! Iterates of a derivation and a rank test for linear independence of maps.

use std::collections::HashMap;

use num_traits::Zero;

use super::{AffineDerivation, Derivation};
use crate::algebra::Q;
use crate::error::{Error, Result};
use crate::tower::{substitution_point, FieldTower, TowerElement};

/// A map from a tower into itself that can be evaluated pointwise.
pub trait ElementMap {
    fn apply(&self, x: &TowerElement) -> Result<TowerElement>;
}

impl ElementMap for Derivation {
    fn apply(&self, x: &TowerElement) -> Result<TowerElement> {
        self.eval(x)
    }
}

impl ElementMap for AffineDerivation {
    fn apply(&self, x: &TowerElement) -> Result<TowerElement> {
        AffineDerivation::apply(self, x)
    }
}

/// `d^power`; power 0 is the identity.
#[derive(Clone, Debug)]
pub struct DerivationPower {
    pub der: Derivation,
    pub power: usize,
}

impl ElementMap for DerivationPower {
    fn apply(&self, x: &TowerElement) -> Result<TowerElement> {
        if x.tower() != self.der.tower() {
            return Err(Error::TowerMismatch);
        }
        let mut y = x.clone();
        for _ in 0..self.power {
            y = self.der.eval(&y)?;
        }
        Ok(y)
    }
}

/// `d^0, d^1, ..., d^k`.
pub fn iterate(d: &Derivation, k: usize) -> Vec<DerivationPower> {
    (0..=k).map(|power| DerivationPower { der: d.clone(), power }).collect()
}

/// Maps the i-th transcendental generator to the i-th prime.
pub fn default_substitution(tower: &FieldTower) -> HashMap<String, Q> {
    const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    let mut primes = PRIMES.iter().copied().chain((59..).filter(|&n: &i64| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)));
    tower
        .transcendental_names()
        .into_iter()
        .map(|n| (n, Q::from_integer(primes.next().unwrap().into())))
        .collect()
}

/// Rank over Q of `M[i][j] = maps[j](points[i])` after substituting
/// rationals for the generators. Full column rank certifies linear
/// independence of the maps; a smaller rank only suggests dependence.
///
/// When `subst` is `None` the default substitution is used, which only
/// covers transcendental generators.
pub fn independence_rank(
    maps: &[&dyn ElementMap],
    points: &[TowerElement],
    subst: Option<&HashMap<String, Q>>,
) -> Result<usize> {
    let Some(first) = points.first() else { return Ok(0) };
    let tower = first.tower();
    let values = match subst {
        Some(s) => s.clone(),
        None => default_substitution(tower),
    };
    let point = substitution_point(tower, &values)?;
    let mut rows = Vec::with_capacity(points.len());
    for p in points {
        let mut row = Vec::with_capacity(maps.len());
        for m in maps {
            let img = m.apply(p)?;
            row.push(img.substitute_at(&point)?);
        }
        rows.push(row);
    }
    Ok(rank(rows))
}

/// Rank by Gaussian elimination over Q.
pub(crate) fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..ncols {
                let v = &f * &m[r][j];
                m[i][j] -= v;
            }
        }
        r += 1;
    }
    r
}
