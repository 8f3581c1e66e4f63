//! Symmetric multiadditive maps on `Q^dim`, their diagonalizations, and
//! polynomial functions `p = A_0* + ... + A_n*`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{binomial, factorial, fmt_q, parse_q, Q};
use crate::error::{Error, Result};

/// A symmetric `k`-additive map on `Q^dim`. The coefficient stored under a
/// sorted index list applies to every ordering of those indices, so
/// `A(x_1, ..., x_k) = sum over index tuples c[sorted(i)] * x_1[i_1] ... x_k[i_k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMultiMap {
    k: usize,
    dim: usize,
    coeffs: BTreeMap<Vec<usize>, Q>,
}

impl SymMultiMap {
    pub fn zero(k: usize, dim: usize) -> Self {
        SymMultiMap { k, dim, coeffs: BTreeMap::new() }
    }

    /// The arity-0 map with value `c`.
    pub fn constant(dim: usize, c: Q) -> Self {
        let mut m = Self::zero(0, dim);
        m.set(&[], c).unwrap();
        m
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets the coefficient for an index tuple (any order).
    pub fn set(&mut self, idx: &[usize], c: Q) -> Result<()> {
        if idx.len() != self.k || idx.iter().any(|&i| i >= self.dim) {
            return Err(Error::InvalidArgument(format!(
                "index {idx:?} does not fit arity {} dim {}",
                self.k, self.dim
            )));
        }
        let mut key = idx.to_vec();
        key.sort_unstable();
        if c.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, c);
        }
        Ok(())
    }

    pub fn coeff(&self, idx: &[usize]) -> Q {
        let mut key = idx.to_vec();
        key.sort_unstable();
        self.coeffs.get(&key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<usize>, Q> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_dim(&self, v: &[Q]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::InvalidArgument(format!("vector of length {} in dimension {}", v.len(), self.dim)));
        }
        Ok(())
    }

    /// `A(xs[0], ..., xs[k-1])`.
    pub fn eval(&self, xs: &[&[Q]]) -> Result<Q> {
        if xs.len() != self.k {
            return Err(Error::InvalidArgument(format!("arity {} map applied to {} vectors", self.k, xs.len())));
        }
        for x in xs {
            self.check_dim(x)?;
        }
        let mut acc = Q::zero();
        for (key, c) in &self.coeffs {
            // every distinct ordering of the multiset `key`
            let mut perm = key.clone();
            loop {
                let mut t = c.clone();
                for (x, &i) in xs.iter().zip(&perm) {
                    t *= &x[i];
                }
                acc += t;
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        Ok(acc)
    }

    /// The diagonalization `A*(x) = A(x, ..., x)`.
    pub fn trace(&self, x: &[Q]) -> Result<Q> {
        let xs: Vec<&[Q]> = vec![x; self.k];
        self.eval(&xs)
    }

    pub fn add(&self, o: &SymMultiMap) -> Result<SymMultiMap> {
        if (self.k, self.dim) != (o.k, o.dim) {
            return Err(Error::InvalidArgument("arity or dimension mismatch".into()));
        }
        let mut r = self.clone();
        for (key, c) in &o.coeffs {
            let v = r.coeff(key) + c;
            r.set(key, v)?;
        }
        Ok(r)
    }

    /// Sorted `(i1,...,ik) value` lines under a `# arity K dim D` header.
    pub fn to_text(&self) -> String {
        let mut s = format!("# arity {} dim {}\n", self.k, self.dim);
        for (key, c) in &self.coeffs {
            let idx: Vec<String> = key.iter().map(|i| i.to_string()).collect();
            s.push_str(&format!("({}) {}\n", idx.join(","), fmt_q(c)));
        }
        s
    }

    /// Parses the format of [`SymMultiMap::to_text`]. Without a header, the
    /// arity is taken from the first line and `dim` must be given.
    pub fn parse(text: &str, dim: Option<usize>) -> Result<SymMultiMap> {
        let mut header: Option<(usize, usize)> = None;
        let mut rows: Vec<(Vec<usize>, Q)> = vec![];
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(h) = line.strip_prefix('#') {
                let w: Vec<&str> = h.split_whitespace().collect();
                if let ["arity", k, "dim", d] = w.as_slice() {
                    let bad = || Error::Parse(format!("line {}: bad header", ln + 1));
                    header = Some((k.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?));
                }
                continue;
            }
            let bad = || Error::Parse(format!("line {}: expected `(i1,...,ik) value`", ln + 1));
            let rest = line.strip_prefix('(').ok_or_else(bad)?;
            let (idx, val) = rest.split_once(')').ok_or_else(bad)?;
            let idx: Vec<usize> = if idx.trim().is_empty() {
                vec![]
            } else {
                idx.split(',').map(|s| s.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<_>>()?
            };
            rows.push((idx, parse_q(val.trim()).map_err(|_| bad())?));
        }
        let (k, d) = match (header, dim) {
            (Some(h), _) => h,
            (None, Some(d)) => (rows.first().map_or(0, |r| r.0.len()), d),
            (None, None) => return Err(Error::Parse("missing `# arity K dim D` header".into())),
        };
        let mut m = SymMultiMap::zero(k, d);
        for (idx, v) in rows {
            let mut key = idx.clone();
            key.sort_unstable();
            if let Some(old) = m.coeffs.get(&key) {
                if old != &v {
                    return Err(Error::Parse(format!("conflicting values for {idx:?}")));
                }
            }
            m.set(&idx, v)?;
        }
        Ok(m)
    }
}

impl fmt::Display for SymMultiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn vadd(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Iterated forward difference `Delta_{y_1} ... Delta_{y_m} f (x)`.
pub fn delta(f: &dyn Fn(&[Q]) -> Q, ys: &[Vec<Q>], x: &[Q]) -> Q {
    let m = ys.len();
    let mut acc = Q::zero();
    for mask in 0u64..(1u64 << m) {
        let mut pt = x.to_vec();
        for (i, y) in ys.iter().enumerate() {
            if mask >> i & 1 == 1 {
                pt = vadd(&pt, y);
            }
        }
        let v = f(&pt);
        if (m - mask.count_ones() as usize) % 2 == 0 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    acc
}

/// Both sides of an identity and whether they agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: Q,
    pub rhs: Q,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.holds() { "holds" } else { "FAILS" };
        write!(f, "{verdict}: lhs = {}, rhs = {}", fmt_q(&self.lhs), fmt_q(&self.rhs))
    }
}

/// `Delta_{y_1..y_m} A*(x)` against `0` when `m > n` or `n! A(y_1, ..., y_n)` when `m = n`.
pub fn polarization_check(a: &SymMultiMap, ys: &[Vec<Q>], x: &[Q]) -> Result<IdentityCheck> {
    a.check_dim(x)?;
    for y in ys {
        a.check_dim(y)?;
    }
    let n = a.k;
    let m = ys.len();
    if m < n {
        return Err(Error::InvalidArgument(format!("need at least {n} difference directions, got {m}")));
    }
    let lhs = delta(&|v: &[Q]| a.trace(v).expect("dimension checked"), ys, x);
    let rhs = if m > n {
        Q::zero()
    } else {
        let refs: Vec<&[Q]> = ys.iter().map(Vec::as_slice).collect();
        factorial(n) * a.eval(&refs)?
    };
    Ok(IdentityCheck { lhs, rhs })
}

/// `A*(x+y)` against `sum_k C(n,k) A([x]_k, [y]_{n-k})`.
pub fn binomial_check(a: &SymMultiMap, x: &[Q], y: &[Q]) -> Result<IdentityCheck> {
    a.check_dim(x)?;
    a.check_dim(y)?;
    let n = a.k;
    let lhs = a.trace(&vadd(x, y))?;
    let mut rhs = Q::zero();
    for k in 0..=n {
        let mut args: Vec<&[Q]> = vec![x; k];
        args.extend(std::iter::repeat(y).take(n - k));
        rhs += binomial(n, k) * a.eval(&args)?;
    }
    Ok(IdentityCheck { lhs, rhs })
}

/// `p = A_0* + A_1* + ... + A_n*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFunction {
    pub dim: usize,
    pub components: Vec<SymMultiMap>,
}

impl PolyFunction {
    pub fn eval(&self, x: &[Q]) -> Result<Q> {
        let mut acc = Q::zero();
        for c in &self.components {
            acc += c.trace(x)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for PolyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn basis(dim: usize, i: usize) -> Vec<Q> {
    (0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
}

fn grid(dim: usize, r: i64) -> Vec<Vec<Q>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-r..=r).map(move |c| {
                    let mut w = v.clone();
                    w.push(Q::from_integer(c.into()));
                    w
                })
            })
            .collect();
    }
    out
}

/// Recovers the components of a polynomial function of degree at most `n`:
/// `A_k(e_{i_1}, ..., e_{i_k}) = Delta_{e_{i_1}..e_{i_k}} r_k(0) / k!` where
/// `r_k` is `p` minus the components already found. The remaining residual
/// must vanish on the grid `{-(n+1)..n+1}^dim`.
pub fn recover_components(p: &dyn Fn(&[Q]) -> Q, n: usize, dim: usize) -> Result<PolyFunction> {
    let zero = vec![Q::zero(); dim];
    let mut found: Vec<SymMultiMap> = vec![];
    let residual = |found: &[SymMultiMap], x: &[Q]| -> Q {
        let mut v = p(x);
        for c in found {
            v -= c.trace(x).expect("dimension fixed");
        }
        v
    };
    for k in (0..=n).rev() {
        let mut a = SymMultiMap::zero(k, dim);
        let kf = factorial(k);
        for idx in multisets(dim, k) {
            let ys: Vec<Vec<Q>> = idx.iter().map(|&i| basis(dim, i)).collect();
            let v = delta(&|x: &[Q]| residual(&found, x), &ys, &zero) / &kf;
            a.set(&idx, v)?;
        }
        found.push(a);
    }
    for x in grid(dim, n as i64 + 1) {
        if !residual(&found, &x).is_zero() {
            return Err(Error::NonzeroResidual(n));
        }
    }
    found.reverse();
    Ok(PolyFunction { dim, components: found })
}

/// Sorted index lists of length `k` over `0..dim`.
fn multisets(dim: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(i, dim, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(0, dim, k, &mut vec![], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qi;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    fn bilinear_1d() -> SymMultiMap {
        let mut a = SymMultiMap::zero(2, 1);
        a.set(&[0, 0], qi(1)).unwrap();
        a
    }

    #[test]
    fn trace_examples() {
        assert_eq!(bilinear_1d().trace(&v(&[3])).unwrap(), qi(9));
        assert_eq!(SymMultiMap::constant(2, qi(5)).trace(&v(&[7, 1])).unwrap(), qi(5));
        let mut a = SymMultiMap::zero(2, 2);
        a.set(&[1, 0], qi(1)).unwrap();
        assert_eq!(a.trace(&v(&[1, 2])).unwrap(), qi(4));
    }

    #[test]
    fn delta_examples() {
        let c = |_: &[Q]| qi(7);
        assert_eq!(delta(&c, &[v(&[2])], &v(&[5])), qi(0));
        let sq = |x: &[Q]| &x[0] * &x[0];
        assert_eq!(delta(&sq, &[v(&[3])], &v(&[5])), qi(2 * 5 * 3 + 9));
        assert_eq!(delta(&sq, &[v(&[3]), v(&[-4])], &v(&[5])), qi(-24));
    }

    #[test]
    fn polarization_examples() {
        let a = bilinear_1d();
        let r = polarization_check(&a, &[v(&[3]), v(&[4])], &v(&[9])).unwrap();
        assert!(r.holds());
        assert_eq!(r.rhs, qi(24));
        assert_eq!(polarization_check(&a, &[v(&[3]), v(&[4]), v(&[1])], &v(&[2])).unwrap().lhs, qi(0));
        let mut t = SymMultiMap::zero(3, 1);
        t.set(&[0, 0, 0], qi(1)).unwrap();
        let r = polarization_check(&t, &[v(&[1]), v(&[2]), v(&[3])], &v(&[0])).unwrap();
        assert_eq!((r.lhs.clone(), r.holds()), (qi(36), true));
    }

    #[test]
    fn binomial_examples() {
        let a = bilinear_1d();
        let r = binomial_check(&a, &v(&[2]), &v(&[5])).unwrap();
        assert!(r.holds());
        assert_eq!(r.lhs, qi(49));
        let r = binomial_check(&a, &v(&[2]), &v(&[0])).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn recovery_examples() {
        let p = |x: &[Q]| &x[0] * &x[0] + qi(3) * &x[0] + qi(1);
        let pf = recover_components(&p, 2, 1).unwrap();
        assert_eq!(pf.components[2], bilinear_1d());
        assert_eq!(pf.components[1].coeff(&[0]), qi(3));
        assert_eq!(pf.components[0].coeff(&[]), qi(1));

        let lin = |x: &[Q]| qi(5) * &x[0];
        let pf = recover_components(&lin, 2, 1).unwrap();
        assert!(pf.components[2].is_zero() && pf.components[0].is_zero());
        assert_eq!(pf.components[1].coeff(&[0]), qi(5));

        let cube = |x: &[Q]| &x[0] * &x[0] * &x[0];
        assert_eq!(recover_components(&cube, 2, 1), Err(Error::NonzeroResidual(2)));
    }

    #[test]
    fn text_round_trip() {
        let mut a = SymMultiMap::zero(3, 2);
        a.set(&[1, 0, 1], crate::algebra::q(-3, 4)).unwrap();
        a.set(&[0, 0, 0], qi(2)).unwrap();
        let s = a.to_text();
        assert_eq!(s, "# arity 3 dim 2\n(0,0,0) 2\n(0,1,1) -3/4\n");
        assert_eq!(SymMultiMap::parse(&s, None).unwrap(), a);
        let c = SymMultiMap::constant(3, qi(4));
        assert_eq!(SymMultiMap::parse(&c.to_text(), None).unwrap(), c);
    }
}
