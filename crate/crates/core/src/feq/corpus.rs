//! Named equations and two small finite experiments built on the solver.

use std::collections::HashMap;
use std::fmt;

use super::{feq_solve_brute, Equation};
use crate::algebra::FiniteCarrier;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NamedEquation {
    pub name: &'static str,
    pub text: &'static str,
    pub unknowns: &'static [&'static str],
    pub about: &'static str,
    /// The real-line question behind the equation is open, so finite results
    /// are evidence only.
    pub open: bool,
}

const OPEN_NOTE: &str = "open problem; finite-carrier evidence is non-conclusive";

static CORPUS: &[NamedEquation] = &[
    NamedEquation {
        name: "cauchy-add",
        text: "f(x+y) = f(x) + f(y)",
        unknowns: &["f"],
        about: "additive Cauchy equation",
        open: false,
    },
    NamedEquation {
        name: "cauchy-exp",
        text: "f(x+y) = f(x)*f(y)",
        unknowns: &["f"],
        about: "exponential Cauchy equation",
        open: false,
    },
    NamedEquation {
        name: "cauchy-log",
        text: "f(x*y) = f(x) + f(y)",
        unknowns: &["f"],
        about: "logarithmic Cauchy equation",
        open: false,
    },
    NamedEquation {
        name: "cauchy-mult",
        text: "f(x*y) = f(x)*f(y)",
        unknowns: &["f"],
        about: "multiplicative Cauchy equation",
        open: false,
    },
    NamedEquation {
        name: "jensen",
        text: "f((x+y)/2) = (f(x) + f(y))/2",
        unknowns: &["f"],
        about: "Jensen equation",
        open: false,
    },
    NamedEquation {
        name: "hosszu",
        text: "f(x+y-x*y) + f(x*y) = f(x) + f(y)",
        unknowns: &["f"],
        about: "Hosszu equation",
        open: false,
    },
    NamedEquation {
        name: "ger-hom",
        text: "f(x+y) + f(x*y) = f(x) + f(y) + f(x)*f(y)",
        unknowns: &["f"],
        about: "ring homomorphisms in one equation",
        open: false,
    },
    NamedEquation {
        name: "leibniz",
        text: "f(x*y) = x*f(y) + y*f(x)",
        unknowns: &["f"],
        about: "Leibniz rule",
        open: false,
    },
    NamedEquation {
        name: "alien-c22",
        text: "lambda*(f(x+y) - f(x) - f(y)) + mu*(f(x*y) - x*f(y) - y*f(x)) = 0",
        unknowns: &["f"],
        about: "linear combination of the Cauchy and Leibniz equations",
        open: false,
    },
    NamedEquation {
        name: "cl-pair",
        text: "f(x+y) - f(x) - f(y) = g(x*y) - x*g(y) - y*g(x)",
        unknowns: &["f", "g"],
        about: "Cauchy difference of f against Leibniz difference of g",
        open: false,
    },
    NamedEquation {
        name: "opp2",
        text: "f(x+y-x*y) - f(x) - f(y) + f(x*y) = f(x*y) - x*f(y) - f(x)*y",
        unknowns: &["f"],
        about: "does this single equation force a derivation?",
        open: true,
    },
    NamedEquation {
        name: "opp3",
        text: "f((x+y)/2) - f(x) - f(y) = f(x*y) - x*f(y) - f(x)*y",
        unknowns: &["f"],
        about: "does this single equation force a derivation?",
        open: true,
    },
];

pub fn corpus() -> &'static [NamedEquation] {
    CORPUS
}

impl NamedEquation {
    pub fn equation(&self) -> Equation {
        let mut eq = Equation::parse(self.text).expect("corpus equations parse");
        eq.name = self.name.to_string();
        eq.note = self.open.then(|| OPEN_NOTE.to_string());
        eq
    }
}

/// The corpus equation called `name`.
pub fn lookup(name: &str) -> Result<Equation> {
    CORPUS
        .iter()
        .find(|e| e.name == name)
        .map(NamedEquation::equation)
        .ok_or_else(|| Error::InvalidArgument(format!("no equation named `{name}`")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogZeroReport {
    pub carrier: FiniteCarrier,
    /// Whether 0 was part of the domain.
    pub with_zero: bool,
    /// Domain points in table order.
    pub points: Vec<u64>,
    /// Modulus of the codomain.
    pub codomain: u64,
    pub solutions: Vec<Vec<u64>>,
}

impl LogZeroReport {
    pub fn only_zero(&self) -> bool {
        self.solutions.len() == 1 && self.solutions[0].iter().all(|&v| v == 0)
    }
}

impl fmt::Display for LogZeroReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dom = if self.with_zero { self.carrier.to_string() } else { format!("units of {}", self.carrier) };
        writeln!(f, "f(xy) = f(x) + f(y) on {dom} into Z/{}: {} solutions", self.codomain, self.solutions.len())?;
        for s in &self.solutions {
            let cells: Vec<String> = self.points.iter().zip(s).map(|(x, v)| format!("{x}->{v}")).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        if self.with_zero {
            writeln!(f, "only the zero function: {}", if self.only_zero() { "yes" } else { "no" })?;
        }
        Ok(())
    }
}

/// Solves the logarithmic equation on a finite carrier. With `units_only`
/// the domain is the unit group and values are taken modulo its order, so
/// that homomorphisms of a cyclic unit group show up as nonzero solutions.
pub fn logarithmic_zero_check(c: &FiniteCarrier, units_only: bool, budget: u64) -> Result<LogZeroReport> {
    if !units_only {
        let r = feq_solve_brute(&lookup("cauchy-log")?, &["f"], c, &HashMap::new(), budget)?;
        return Ok(LogZeroReport {
            carrier: c.clone(),
            with_zero: true,
            points: c.elements().collect(),
            codomain: c.modulus(),
            solutions: r.solutions.into_iter().map(|s| s[0].values.clone()).collect(),
        });
    }
    let units = c.units();
    let m = units.len() as u64;
    let total = (m as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let pos = |u: u64| units.iter().position(|&w| w == u).expect("units are closed under products");
    let mut f = vec![0u64; units.len()];
    let mut solutions = vec![];
    loop {
        let ok = units.iter().enumerate().all(|(i, &x)| {
            units.iter().enumerate().all(|(j, &y)| f[pos(c.mul(x, y))] == (f[i] + f[j]) % m)
        });
        if ok {
            solutions.push(f.clone());
        }
        let mut k = f.len();
        loop {
            if k == 0 {
                return Ok(LogZeroReport { carrier: c.clone(), with_zero: false, points: units, codomain: m, solutions });
            }
            k -= 1;
            f[k] += 1;
            if f[k] < m {
                break;
            }
            f[k] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T1431Report {
    pub p: u64,
    /// Slopes `c` for which `f(x) = c x` satisfies `f(x) = -x^2 f(1/x)` on
    /// every unit.
    pub survivors: Vec<u64>,
    /// Whether every survivor also satisfies the Leibniz rule.
    pub all_derivations: bool,
}

impl fmt::Display for T1431Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.survivors.iter().map(u64::to_string).collect();
        writeln!(f, "GF({}): additive f(x) = c x with f(x) = -x^2 f(1/x): c in {{{}}}", self.p, s.join(", "))?;
        writeln!(f, "all survivors are derivations: {}", if self.all_derivations { "yes" } else { "no" })
    }
}

/// Tests the inversion condition `f(x) = -x^2 f(1/x)` against the additive
/// maps of GF(p) and checks the Leibniz rule for those that satisfy it.
pub fn t1431_check(p: u64) -> Result<T1431Report> {
    let c = FiniteCarrier::gf(p)?;
    if p == 2 {
        return Err(Error::InvalidArgument("p must be odd".into()));
    }
    let survivors: Vec<u64> = (0..p)
        .filter(|&k| {
            c.units().into_iter().all(|x| {
                let inv = c.inv(x).unwrap();
                c.mul(k, x) == c.neg(c.mul(c.mul(x, x), c.mul(k, inv)))
            })
        })
        .collect();
    let all_derivations = survivors.iter().all(|&k| {
        c.elements().all(|x| c.elements().all(|y| c.mul(k, c.mul(x, y)) == c.add(c.mul(x, c.mul(k, y)), c.mul(y, c.mul(k, x)))))
    });
    Ok(T1431Report { p, survivors, all_derivations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_parses_with_expected_symbols() {
        for e in corpus() {
            let eq = e.equation();
            let fns: Vec<String> = eq.functions().into_iter().collect();
            assert_eq!(fns, e.unknowns.to_vec(), "{}", e.name);
        }
        assert_eq!(lookup("alien-c22").unwrap().params().into_iter().collect::<Vec<_>>(), ["lambda", "mu"]);
        assert!(lookup("opp3").unwrap().note.is_some());
        assert!(lookup("hosszu").unwrap().note.is_none());
        assert!(lookup("nope").is_err());
    }

    #[test]
    fn logarithmic_zero() {
        for p in [3, 5] {
            let c = FiniteCarrier::gf(p).unwrap();
            let r = logarithmic_zero_check(&c, false, 10_000_000).unwrap();
            assert!(r.only_zero(), "{r}");
        }
        let c = FiniteCarrier::gf(5).unwrap();
        let r = logarithmic_zero_check(&c, true, 10_000_000).unwrap();
        // units 1,2,3,4 with 2 a generator: f(2^k) = k f(2) mod 4
        assert_eq!(r.solutions, vec![vec![0, 0, 0, 0], vec![0, 1, 3, 2], vec![0, 2, 2, 0], vec![0, 3, 1, 2]]);
        assert!(!r.only_zero());
    }

    #[test]
    fn t1431() {
        for p in [3, 5, 7, 11] {
            let r = t1431_check(p).unwrap();
            assert_eq!(r.survivors, vec![0]);
            assert!(r.all_derivations);
        }
        assert!(t1431_check(2).is_err());
        assert!(t1431_check(9).is_err());
    }
}
