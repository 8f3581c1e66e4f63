//! Exhaustive checks over prime fields: decomposition of solutions of
//! `f(x+y) - f(x) - f(y) = g(xy) - x g(y) - y g(x)` and the alienation of the
//! Cauchy and Leibniz equations.

use crate::algebra::FiniteCarrier;
use crate::error::{Error, Result};

/// `f(x) = beta x + alpha x^2 / 2 - alpha x^2` and `g = phi + alpha x`, with
/// `alpha(x) = alpha * x`, `beta(x) = beta * x` and `phi` a Leibniz map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub p: u64,
    pub alpha: u64,
    pub beta: u64,
    pub phi: Vec<u64>,
}

fn primitive_root(c: &FiniteCarrier) -> u64 {
    let p = c.modulus();
    (1..p).find(|&g| (1..p - 1).all(|k| c.pow(g, k) != 1)).expect("prime fields have primitive roots")
}

fn check_e(c: &FiniteCarrier, f: &[u64], g: &[u64]) -> Option<(u64, u64)> {
    let p = c.modulus();
    for x in 0..p {
        for y in 0..p {
            let l = c.sub(c.sub(f[c.add(x, y) as usize], f[x as usize]), f[y as usize]);
            let r = c.sub(c.sub(g[c.mul(x, y) as usize], c.mul(x, g[y as usize])), c.mul(y, g[x as usize]));
            if l != r {
                return Some((x, y));
            }
        }
    }
    None
}

fn is_leibniz(c: &FiniteCarrier, phi: &[u64]) -> bool {
    let p = c.modulus();
    (0..p).all(|x| {
        (0..p).all(|y| phi[c.mul(x, y) as usize] == c.add(c.mul(x, phi[y as usize]), c.mul(y, phi[x as usize])))
    })
}

/// Leibniz maps obtained from `phi(r^k) = k r^(k-1) phi(r)` on a primitive
/// root `r`, keeping only those that pass the Leibniz rule everywhere.
pub(crate) fn leibniz_maps(c: &FiniteCarrier) -> Vec<Vec<u64>> {
    let p = c.modulus();
    let r = primitive_root(c);
    let mut out = vec![];
    for v in 0..p {
        let mut phi = vec![0u64; p as usize];
        for k in 1..p {
            let x = c.pow(r, k);
            phi[x as usize] = c.mul(c.mul(k % p, c.pow(r, k - 1)), v);
        }
        if is_leibniz(c, &phi) {
            out.push(phi);
        }
    }
    out
}

/// Finds `(alpha, beta, phi)` for a solution `(f, g)` over GF(p), `p >= 3`.
/// `f[x]` and `g[x]` are the values at the residue `x`.
pub fn char_decompose(p: u64, f: &[u64], g: &[u64]) -> Result<Decomposition> {
    let c = FiniteCarrier::gf(p)?;
    if p < 3 {
        return Err(Error::InvalidArgument("halving needs characteristic at least 3".into()));
    }
    if f.len() != p as usize || g.len() != p as usize || f.iter().chain(g).any(|&v| v >= p) {
        return Err(Error::InvalidArgument(format!("tables must list {p} residues mod {p}")));
    }
    if let Some((x, y)) = check_e(&c, f, g) {
        return Err(Error::VerificationFailed(format!("(f, g) does not solve the equation at (x, y) = ({x}, {y})")));
    }
    let half = c.inv(2).unwrap();
    let phis = leibniz_maps(&c);
    for alpha in 0..p {
        // f(x) - beta x = (alpha/2 - alpha) x^2
        let q = c.sub(c.mul(alpha, half), alpha);
        for beta in 0..p {
            let f_ok = (0..p).all(|x| f[x as usize] == c.add(c.mul(beta, x), c.mul(q, c.mul(x, x))));
            if !f_ok {
                continue;
            }
            for phi in &phis {
                if (0..p).all(|x| g[x as usize] == c.add(phi[x as usize], c.mul(alpha, x))) {
                    return Ok(Decomposition { p, alpha, beta, phi: phi.clone() });
                }
            }
        }
    }
    Err(Error::DecompositionNotFound(p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlienReport {
    pub p: u64,
    pub lambda: u64,
    pub mu: u64,
    /// Every table with `lambda C_f + mu L_f = 0`, in enumeration order.
    pub solutions: Vec<Vec<u64>>,
    /// Whether each solution separately satisfies both equations.
    pub all_derivations: bool,
}

/// Enumerates all `p^p` tables `f` on GF(p) with
/// `lambda (f(x+y) - f(x) - f(y)) + mu (f(xy) - x f(y) - y f(x)) = 0`.
pub fn alien_check(lambda: u64, mu: u64, p: u64, budget: u64) -> Result<AlienReport> {
    let c = FiniteCarrier::gf(p)?;
    let (lambda, mu) = (lambda % p, mu % p);
    if lambda == 0 || mu == 0 {
        return Err(Error::InvalidArgument("lambda and mu must be nonzero".into()));
    }
    let total = (p as u128).pow(p as u32);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let cauchy = |f: &[u64], x: u64, y: u64| c.sub(c.sub(f[c.add(x, y) as usize], f[x as usize]), f[y as usize]);
    let leibniz = |f: &[u64], x: u64, y: u64| {
        c.sub(c.sub(f[c.mul(x, y) as usize], c.mul(x, f[y as usize])), c.mul(y, f[x as usize]))
    };
    let all = |f: &[u64], e: &dyn Fn(&[u64], u64, u64) -> u64| (0..p).all(|x| (0..p).all(|y| e(f, x, y) == 0));
    let mut f = vec![0u64; p as usize];
    let mut solutions = vec![];
    loop {
        if all(&f, &|f, x, y| c.add(c.mul(lambda, cauchy(f, x, y)), c.mul(mu, leibniz(f, x, y)))) {
            solutions.push(f.clone());
        }
        let mut k = p as usize;
        loop {
            if k == 0 {
                let all_derivations = solutions.iter().all(|s| all(s, &cauchy) && all(s, &leibniz));
                return Ok(AlienReport { p, lambda, mu, solutions, all_derivations });
            }
            k -= 1;
            f[k] += 1;
            if f[k] < p {
                break;
            }
            f[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_examples() {
        let f: Vec<u64> = (0..5).map(|x| x * x % 5).collect();
        let g: Vec<u64> = (0..5).map(|x| 3 * x % 5).collect();
        let d = char_decompose(5, &f, &g).unwrap();
        assert_eq!((d.alpha, d.beta), (3, 0));
        assert!(d.phi.iter().all(|&v| v == 0));
        let z = vec![0; 7];
        let d = char_decompose(7, &z, &z).unwrap();
        assert_eq!((d.alpha, d.beta), (0, 0));
        let bad: Vec<u64> = (0..5).map(|x| x * x * x % 5).collect();
        assert!(matches!(char_decompose(5, &bad, &z[..5]), Err(Error::VerificationFailed(_))));
    }

    #[test]
    fn prime_field_leibniz_maps_vanish() {
        for p in [3u64, 5, 7, 11] {
            let c = FiniteCarrier::gf(p).unwrap();
            assert_eq!(leibniz_maps(&c), vec![vec![0; p as usize]]);
        }
    }

    #[test]
    fn alien_examples() {
        let r = alien_check(1, 1, 3, 10_000_000).unwrap();
        assert_eq!(r.solutions, vec![vec![0, 0, 0]]);
        assert!(r.all_derivations);
        let r = alien_check(2, 3, 5, 10_000_000).unwrap();
        assert_eq!(r.solutions, vec![vec![0; 5]]);
        assert!(alien_check(0, 1, 3, 100).is_err());
        assert!(matches!(alien_check(1, 1, 7, 1000), Err(Error::BudgetExceeded { .. })));
    }
}
