//! Higher-order derivations `(d_0, ..., d_n)` on polynomial rings, driven by a
//! symmetric coefficient table `Gamma` on `{(i, j) : i + j <= n}`:
//!
//! `d_k(xy) = sum_{i=0..k} Gamma(i, k-i) d_i(x) d_{k-i}(y)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{binomial, fmt_q, parse_q, Monomial, MultiPoly, Q};
use crate::error::{Error, Result};

/// Symmetric table on the triangle `i + j <= n` with ones on the margins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTable {
    n: usize,
    // rows[i][j] for i + j <= n
    rows: Vec<Vec<Q>>,
}

impl GammaTable {
    fn filled(n: usize, f: impl Fn(usize, usize) -> Q) -> Self {
        let rows = (0..=n).map(|i| (0..=n - i).map(|j| if i * j == 0 { Q::one() } else { f(i, j) }).collect()).collect();
        GammaTable { n, rows }
    }

    pub fn ones(n: usize) -> Self {
        Self::filled(n, |_, _| Q::one())
    }

    pub fn binomial(n: usize) -> Self {
        Self::filled(n, |i, j| binomial(i + j, i))
    }

    /// Builds a table from interior entries; each unordered pair may be given
    /// once or twice (consistently). Margin entries, if present, must be 1.
    pub fn from_entries(n: usize, entries: &[((usize, usize), Q)]) -> Result<Self> {
        let mut map: HashMap<(usize, usize), Q> = HashMap::new();
        for ((i, j), v) in entries {
            let (i, j) = (*i.min(j), *i.max(j));
            if i + j > n {
                return Err(Error::GammaTable(format!("entry ({i}, {j}) lies outside the order-{n} triangle")));
            }
            if i == 0 && !v.is_one() {
                return Err(Error::GammaTable(format!("margin entry (0, {j}) must be 1, got {}", fmt_q(v))));
            }
            if let Some(old) = map.insert((i, j), v.clone()) {
                if &old != v {
                    return Err(Error::GammaTable(format!("entry ({i}, {j}) given twice with different values")));
                }
            }
        }
        for i in 1..=n {
            for j in i..=n.saturating_sub(i) {
                if j >= 1 && !map.contains_key(&(i, j)) {
                    return Err(Error::GammaTable(format!("missing interior entry ({i}, {j})")));
                }
            }
        }
        Ok(Self::filled(n, |i, j| map[&(i.min(j), i.max(j))].clone()))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.rows[i][j]
    }

    /// The same table restricted to a smaller order.
    pub fn truncate(&self, n: usize) -> GammaTable {
        Self::filled(n.min(self.n), |i, j| self.rows[i][j].clone())
    }

    /// Plain-text listing of the interior, one `i j value` per line with `i <= j`.
    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for i in 1..=self.n {
            for j in i..=self.n - i {
                s.push_str(&format!("{i} {j} {}\n", fmt_q(&self.rows[i][j])));
            }
        }
        s
    }

    /// Parses `i j value` lines. An optional `n N` line fixes the order;
    /// otherwise it is the largest `i + j` listed. Margins default to 1.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut entries = vec![];
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::GammaTable(format!("line {}: expected `i j value`", ln + 1));
            match parts.as_slice() {
                ["n", k] => n = Some(k.parse::<usize>().map_err(|_| bad())?),
                [i, j, v] => {
                    let i = i.parse::<usize>().map_err(|_| bad())?;
                    let j = j.parse::<usize>().map_err(|_| bad())?;
                    entries.push(((i, j), parse_q(v).map_err(|_| bad())?));
                }
                _ => return Err(bad()),
            }
        }
        let n = n.unwrap_or_else(|| entries.iter().map(|((i, j), _)| i + j).max().unwrap_or(0));
        Self::from_entries(n, &entries)
    }
}

impl fmt::Display for GammaTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Triples `(i, j, k)` with `i + j + k <= n` where
/// `Gamma(i+j, k) Gamma(i, j) != Gamma(i, j+k) Gamma(j, k)`, in lexicographic order.
pub fn gamma_check(g: &GammaTable) -> Vec<(usize, usize, usize)> {
    let n = g.n;
    let mut out = vec![];
    for i in 0..=n {
        for j in 0..=n - i {
            for k in 0..=n - i - j {
                if g.get(i + j, k) * g.get(i, j) != g.get(i, j + k) * g.get(j, k) {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

/// `gamma(0..=n)` with `gamma(0) = gamma(1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFactor(pub Vec<Q>);

/// `gamma(k) = prod_{l<k} Gamma(l, 1)`, verified against `Gamma(i,j) = gamma(i+j)/(gamma(i) gamma(j))`.
pub fn gamma_factor(g: &GammaTable) -> Result<GammaFactor> {
    for i in 0..=g.n {
        for j in 0..=g.n - i {
            if g.get(i, j).is_zero() {
                return Err(Error::GammaZero(i, j));
            }
        }
    }
    let mut gamma = vec![Q::one()];
    for k in 1..=g.n {
        let prev = gamma[k - 1].clone();
        gamma.push(prev * g.get(k - 1, 1));
    }
    for i in 0..=g.n {
        for j in 0..=g.n - i {
            if &(&gamma[i + j] / (&gamma[i] * &gamma[j])) != g.get(i, j) {
                return Err(Error::GammaMismatch(i, j));
            }
        }
    }
    Ok(GammaFactor(gamma))
}

pub fn gamma_from_factor(gamma: &GammaFactor, n: usize) -> Result<GammaTable> {
    let v = &gamma.0;
    if v.len() <= n {
        return Err(Error::InvalidArgument(format!("factor has {} values, order {n} needs {}", v.len(), n + 1)));
    }
    if let Some(k) = v[..=n].iter().position(Zero::is_zero) {
        return Err(Error::InvalidArgument(format!("factor vanishes at {k}")));
    }
    let t = GammaTable::filled(n, |i, j| &v[i + j] / (&v[i] * &v[j]));
    debug_assert!(gamma_check(&t).is_empty());
    Ok(t)
}

/// Order-`n` derivation on `Q[vars]`, fixed by `d_k(t_j)` for `1 <= k <= n`.
#[derive(Clone, Debug)]
pub struct HigherDerivation {
    gamma: GammaTable,
    vars: Arc<Vec<String>>,
    // values[k-1][j] = d_k(t_j)
    values: Vec<Vec<MultiPoly>>,
}

impl HigherDerivation {
    /// `values[k-1][j]` is `d_k(vars[j])`; every order `1..=n` must be present.
    pub fn define(gamma: GammaTable, vars: &Arc<Vec<String>>, values: Vec<Vec<MultiPoly>>) -> Result<Self> {
        if let Some(&t) = gamma_check(&gamma).first() {
            return Err(Error::GammaViolation(t));
        }
        if values.len() != gamma.n {
            return Err(Error::InvalidArgument(format!(
                "order {} table needs values for orders 1..={}, got {}",
                gamma.n,
                gamma.n,
                values.len()
            )));
        }
        let mut vals = Vec::with_capacity(values.len());
        for row in values {
            if row.len() != vars.len() {
                return Err(Error::InvalidArgument("one value per generator is required at each order".into()));
            }
            vals.push(row.iter().map(|p| p.embed(vars)).collect::<Result<Vec<_>>>()?);
        }
        Ok(HigherDerivation { gamma, vars: vars.clone(), values: vals })
    }

    pub fn order(&self) -> usize {
        self.gamma.n
    }

    pub fn gamma(&self) -> &GammaTable {
        &self.gamma
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    /// `d_k(vars[j])`, with `d_0` the identity.
    pub fn generator_value(&self, k: usize, j: usize) -> MultiPoly {
        if k == 0 {
            MultiPoly::var_index(&self.vars, j)
        } else {
            self.values[k - 1][j].clone()
        }
    }

    // (d_0(m), ..., d_n(m)), peeling the leftmost variable of m.
    fn monomial_seq(&self, m: &Monomial, memo: &mut HashMap<Monomial, Vec<MultiPoly>>) -> Vec<MultiPoly> {
        if let Some(s) = memo.get(m) {
            return s.clone();
        }
        let n = self.gamma.n;
        let seq = match m.0.iter().position(|&e| e > 0) {
            None => {
                let mut s = vec![MultiPoly::zero(&self.vars); n + 1];
                s[0] = MultiPoly::one(&self.vars);
                s
            }
            Some(j) => {
                let mut rest = m.clone();
                rest.0[j] -= 1;
                let r = self.monomial_seq(&rest, memo);
                (0..=n)
                    .map(|k| {
                        let mut acc = MultiPoly::zero(&self.vars);
                        for i in 0..=k {
                            let a = self.generator_value(i, j);
                            if a.is_zero() || r[k - i].is_zero() {
                                continue;
                            }
                            acc = &acc + &(&a * &r[k - i]).scale(self.gamma.get(i, k - i));
                        }
                        acc
                    })
                    .collect()
            }
        };
        memo.insert(m.clone(), seq.clone());
        seq
    }

    /// `(d_0(p), ..., d_n(p))`.
    pub fn eval_all(&self, p: &MultiPoly) -> Result<Vec<MultiPoly>> {
        let p = p.embed(&self.vars)?;
        let mut memo = HashMap::new();
        let mut out = vec![MultiPoly::zero(&self.vars); self.gamma.n + 1];
        for (m, c) in p.terms() {
            let s = self.monomial_seq(m, &mut memo);
            for (o, v) in out.iter_mut().zip(s) {
                *o = &*o + &v.scale(c);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, k: usize, p: &MultiPoly) -> Result<MultiPoly> {
        if k > self.gamma.n {
            return Err(Error::OrderOutOfRange { order: k, max: self.gamma.n });
        }
        Ok(self.eval_all(p)?.swap_remove(k))
    }

    /// `d_k(pq) - sum_i Gamma(i, k-i) d_i(p) d_{k-i}(q)`.
    pub fn leibniz_residual(&self, k: usize, p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly> {
        if k > self.gamma.n {
            return Err(Error::OrderOutOfRange { order: k, max: self.gamma.n });
        }
        let p = p.embed(&self.vars)?;
        let q = q.embed(&self.vars)?;
        let lhs = self.eval(k, &(&p * &q))?;
        let dp = self.eval_all(&p)?;
        let dq = self.eval_all(&q)?;
        let mut rhs = MultiPoly::zero(&self.vars);
        for i in 0..=k {
            rhs = &rhs + &(&dp[i] * &dq[k - i]).scale(self.gamma.get(i, k - i));
        }
        Ok(&lhs - &rhs)
    }
}

/// All monomials in `nvars` variables of total degree at most `deg`.
pub fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = vec![];
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

/// Extends `hd` by one order. `gamma` must agree with `hd`'s table on the
/// smaller triangle and pass the cocycle check; `choice[j]` is the free value
/// `d_{n+1}(vars[j])`. The new top order is computed through the
/// inhomogeneous Leibniz equation `d(xy) - x d(y) - y d(x) = D(x, y)` and the
/// full product rule is checked on a grid of monomial pairs.
pub fn hod_construct_next(hd: &HigherDerivation, gamma: &GammaTable, choice: &[MultiPoly]) -> Result<HigherDerivation> {
    let n = hd.order() + 1;
    if gamma.order() != n {
        return Err(Error::GammaTable(format!("extended table must have order {n}")));
    }
    if &gamma.truncate(n - 1) != hd.gamma() {
        return Err(Error::GammaTable("extended table disagrees with the existing one".into()));
    }
    if let Some(&t) = gamma_check(gamma).first() {
        return Err(Error::GammaViolation(t));
    }
    let mut values = hd.values.clone();
    values.push(choice.to_vec());
    let next = HigherDerivation::define(gamma.clone(), &hd.vars, values)?;

    let vars = &hd.vars;
    let lower_all = |m: &Monomial| hd.eval_all(&MultiPoly::monomial(vars, m.clone(), Q::one()));
    // D_n(x, y) = sum_{i=1}^{n-1} Gamma(i, n-i) d_i(x) d_{n-i}(y)
    let big_d = |x: &[MultiPoly], y: &[MultiPoly]| -> MultiPoly {
        let mut acc = MultiPoly::zero(vars);
        for i in 1..n {
            acc = &acc + &(&x[i] * &y[n - i]).scale(gamma.get(i, n - i));
        }
        acc
    };
    let mut top: HashMap<Monomial, MultiPoly> = HashMap::new();
    let grid = monomials_up_to(vars.len(), 3);
    for m in &grid {
        let v = top_value(m, vars, choice, &lower_all, &big_d, &mut top)?;
        if v != next.eval(n, &MultiPoly::monomial(vars, m.clone(), Q::one()))? {
            return Err(Error::VerificationFailed(format!("order-{n} value on {m:?} disagrees")));
        }
    }
    let small = monomials_up_to(vars.len(), 2);
    for a in &small {
        for b in &small {
            let pa = MultiPoly::monomial(vars, a.clone(), Q::one());
            let pb = MultiPoly::monomial(vars, b.clone(), Q::one());
            for k in 0..=n {
                if !next.leibniz_residual(k, &pa, &pb)?.is_zero() {
                    return Err(Error::ProductRule { order: k, left: pa.to_string(), right: pb.to_string() });
                }
            }
        }
    }
    Ok(next)
}

// d_n(t_j m) = D_n(t_j, m) + t_j d_n(m) + m d_n(t_j)
fn top_value(
    m: &Monomial,
    vars: &Arc<Vec<String>>,
    choice: &[MultiPoly],
    lower_all: &dyn Fn(&Monomial) -> Result<Vec<MultiPoly>>,
    big_d: &dyn Fn(&[MultiPoly], &[MultiPoly]) -> MultiPoly,
    memo: &mut HashMap<Monomial, MultiPoly>,
) -> Result<MultiPoly> {
    if let Some(v) = memo.get(m) {
        return Ok(v.clone());
    }
    let v = match m.0.iter().position(|&e| e > 0) {
        None => MultiPoly::zero(vars),
        Some(j) => {
            let mut rest = m.clone();
            rest.0[j] -= 1;
            let mut tj = Monomial(vec![0; vars.len()]);
            tj.0[j] = 1;
            let dn_rest = top_value(&rest, vars, choice, lower_all, big_d, memo)?;
            let t = MultiPoly::var_index(vars, j);
            let rest_p = MultiPoly::monomial(vars, rest.clone(), Q::one());
            let c = choice[j].embed(vars)?;
            if rest.degree() == 0 {
                c
            } else {
                &(&big_d(&lower_all(&tj)?, &lower_all(&rest)?) + &(&t * &dn_rest)) + &(&rest_p * &c)
            }
        }
    };
    memo.insert(m.clone(), v.clone());
    Ok(v)
}
