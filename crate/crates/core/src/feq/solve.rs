//! Backtracking search for every table solution of an equation over a
//! finite carrier.
//!
//! Cells `(element, unknown)` are filled in the order `f(0), g(0), f(1), ...`
//! with values `0, 1, ...`. Each pair `(x, y)` is evaluated as soon as the
//! cells it reads are known; a pair that reads an empty cell waits on that
//! cell and is re-evaluated when it is filled. Subtrees under each value of
//! the first cell run on separate threads and are merged in value order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use super::{Compiled, Equation, Ev, FnTable};
use crate::algebra::FiniteCarrier;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub equation: String,
    pub carrier: FiniteCarrier,
    pub unknowns: Vec<String>,
    pub params: Vec<(String, u64)>,
    /// Each solution lists one table per unknown, in `unknowns` order.
    pub solutions: Vec<Vec<FnTable>>,
    /// Equation evaluations spent, counted against the budget.
    pub evaluations: u64,
    pub note: Option<String>,
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.equation, self.carrier)?;
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            write!(f, " with {}", p.join(", "))?;
        }
        let n = self.solutions.len();
        writeln!(f, ": {n} solution{}", if n == 1 { "" } else { "s" })?;
        for s in &self.solutions {
            let parts: Vec<String> = self.unknowns.iter().zip(s).map(|(u, t)| format!("{u} = {t}")).collect();
            writeln!(f, "  {}", parts.join("; "))?;
        }
        if let Some(note) = &self.note {
            writeln!(f, "note: {note}")?;
        }
        Ok(())
    }
}

enum Status {
    Holds,
    Fails,
    Waits(usize),
}

struct Search<'a> {
    c: &'a FiniteCarrier,
    comp: &'a Compiled<u64>,
    /// Position of each function symbol among the unknowns.
    slot: Vec<usize>,
    k: usize,
    pairs: &'a [[u64; 2]],
    table: Vec<Option<u64>>,
    watch: Vec<Vec<usize>>,
    found: Vec<Vec<u64>>,
    spent: &'a AtomicU64,
    local: u64,
    budget: u64,
}

struct OverBudget;

const FLUSH: u64 = 4096;

impl Search<'_> {
    fn status(&mut self, i: usize) -> Result<Status, OverBudget> {
        self.local += 1;
        if self.local >= FLUSH {
            self.flush()?;
        }
        let (k, table, slot) = (self.k, &self.table, &self.slot);
        let mut call = |f: usize, a: &u64| {
            let cell = *a as usize * k + slot[f];
            match table[cell] {
                Some(v) => Ev::Val(v),
                None => Ev::Blocked(cell),
            }
        };
        Ok(match self.comp.sides(self.c, &self.pairs[i], &mut call) {
            Ev::Val((l, r)) if l == r => Status::Holds,
            Ev::Val(_) => Status::Fails,
            Ev::Skip => Status::Holds,
            Ev::Blocked(cell) => Status::Waits(cell),
        })
    }

    fn flush(&mut self) -> Result<(), OverBudget> {
        let total = self.spent.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if total > self.budget {
            Err(OverBudget)
        } else {
            Ok(())
        }
    }

    fn descend(&mut self, depth: usize, v: u64) -> Result<(), OverBudget> {
        self.table[depth] = Some(v);
        let mut pushed = vec![];
        let mut ok = true;
        for j in 0..self.watch[depth].len() {
            let i = self.watch[depth][j];
            match self.status(i)? {
                Status::Holds => {}
                Status::Fails => {
                    ok = false;
                    break;
                }
                Status::Waits(cell) => {
                    debug_assert!(cell > depth);
                    self.watch[cell].push(i);
                    pushed.push(cell);
                }
            }
        }
        if ok {
            if depth + 1 == self.table.len() {
                self.found.push(self.table.iter().map(|v| v.unwrap()).collect());
            } else {
                for w in 0..self.c.modulus() {
                    self.descend(depth + 1, w)?;
                }
            }
        }
        for cell in pushed {
            self.watch[cell].pop();
        }
        self.table[depth] = None;
        Ok(())
    }
}

/// All tables for `unknowns` satisfying `eq` at every pair of carrier
/// elements. Parameters must all be bound. The search gives up with
/// [`Error::BudgetExceeded`] once it has spent more than `budget` equation
/// evaluations; `needed` then reports the size of the unpruned space.
pub fn feq_solve_brute(
    eq: &Equation,
    unknowns: &[&str],
    c: &FiniteCarrier,
    params: &HashMap<String, u64>,
    budget: u64,
) -> Result<SolveReport> {
    if unknowns.is_empty() {
        return Err(Error::InvalidArgument("no unknown functions to solve for".into()));
    }
    let distinct: BTreeSet<&str> = unknowns.iter().copied().collect();
    if distinct.len() != unknowns.len() {
        return Err(Error::InvalidArgument("unknowns must be distinct".into()));
    }
    let comp = Compiled::new(c, eq, params)?;
    let slot: Vec<usize> = comp
        .fns
        .iter()
        .map(|f| unknowns.iter().position(|u| u == f).ok_or_else(|| Error::UnboundSymbol(f.clone())))
        .collect::<Result<_>>()?;

    let n = c.modulus();
    let k = unknowns.len();
    let naive = (n as u128).checked_pow((n as u32) * (k as u32)).unwrap_or(u128::MAX);
    let over = || Error::BudgetExceeded { needed: naive, budget };
    let pairs: Vec<[u64; 2]> = c.elements().flat_map(|x| c.elements().map(move |y| [x, y])).collect();
    let spent = AtomicU64::new(0);

    let mut root = Search {
        c,
        comp: &comp,
        slot,
        k,
        pairs: &pairs,
        table: vec![None; n as usize * k],
        watch: vec![vec![]; n as usize * k],
        found: vec![],
        spent: &spent,
        local: 0,
        budget,
    };
    // pairs that read no cell are decided once; the rest wait on their first
    for i in 0..pairs.len() {
        match root.status(i).map_err(|_| over())? {
            Status::Holds => {}
            Status::Fails => return finish(eq, c, unknowns, params, vec![], &spent, root.local, budget, over),
            Status::Waits(cell) => root.watch[cell].push(i),
        }
    }
    let base_local = root.local;
    root.local = 0;

    let results: Vec<std::result::Result<(Vec<Vec<u64>>, u64), OverBudget>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..n)
            .map(|v| {
                let mut sub = Search {
                    c,
                    comp: &comp,
                    slot: root.slot.clone(),
                    k,
                    pairs: &pairs,
                    table: root.table.clone(),
                    watch: root.watch.clone(),
                    found: vec![],
                    spent: &spent,
                    local: 0,
                    budget,
                };
                s.spawn(move || {
                    sub.descend(0, v)?;
                    Ok((sub.found, sub.local))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search thread panicked")).collect()
    });
    let mut found = vec![];
    let mut rest = base_local;
    for r in results {
        let (f, local) = r.map_err(|_| over())?;
        found.extend(f);
        rest += local;
    }
    finish(eq, c, unknowns, params, found, &spent, rest, budget, over)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    eq: &Equation,
    c: &FiniteCarrier,
    unknowns: &[&str],
    params: &HashMap<String, u64>,
    found: Vec<Vec<u64>>,
    spent: &AtomicU64,
    unflushed: u64,
    budget: u64,
    over: impl Fn() -> Error,
) -> Result<SolveReport> {
    let evaluations = spent.load(Ordering::Relaxed) + unflushed;
    if evaluations > budget {
        return Err(over());
    }
    let k = unknowns.len();
    let solutions = found
        .into_iter()
        .map(|cells| {
            (0..k)
                .map(|u| FnTable { carrier: c.clone(), values: cells.iter().skip(u).step_by(k).copied().collect() })
                .collect()
        })
        .collect();
    let mut params: Vec<(String, u64)> = params.iter().map(|(a, b)| (a.clone(), *b)).collect();
    params.sort();
    Ok(SolveReport {
        equation: eq.name.clone(),
        carrier: c.clone(),
        unknowns: unknowns.iter().map(|s| s.to_string()).collect(),
        params,
        solutions,
        evaluations,
        note: eq.note.clone(),
    })
}

/// Runs the solver once for every assignment of carrier units to the
/// equation's parameters, in lexicographic order of parameter name and value.
pub fn solve_all_units(
    eq: &Equation,
    unknowns: &[&str],
    c: &FiniteCarrier,
    budget: u64,
) -> Result<Vec<SolveReport>> {
    let names: Vec<String> = eq.params().into_iter().collect();
    let units = c.units();
    let mut idx = vec![0usize; names.len()];
    let mut out = vec![];
    loop {
        let params: HashMap<String, u64> = names.iter().cloned().zip(idx.iter().map(|&i| units[i])).collect();
        out.push(feq_solve_brute(eq, unknowns, c, &params, budget)?);
        let mut j = names.len();
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < units.len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{feq_check, lookup};
    use super::*;
    use crate::cocycle::{alien_check, Mode};

    const B: u64 = 10_000_000;

    fn none() -> HashMap<String, u64> {
        HashMap::new()
    }

    fn values(r: &SolveReport) -> Vec<Vec<Vec<u64>>> {
        r.solutions.iter().map(|s| s.iter().map(|t| t.values.clone()).collect()).collect()
    }

    /// Independent oracle: plain enumeration of all tables.
    fn enumerate(c: &FiniteCarrier, k: usize, holds: &dyn Fn(&[Vec<u64>]) -> bool) -> Vec<Vec<Vec<u64>>> {
        let n = c.modulus() as usize;
        let mut cells = vec![0u64; n * k];
        let mut out = vec![];
        loop {
            let tabs: Vec<Vec<u64>> = (0..k).map(|u| cells.iter().skip(u).step_by(k).copied().collect()).collect();
            if holds(&tabs) {
                out.push(tabs);
            }
            let mut j = cells.len();
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                cells[j] += 1;
                if cells[j] < n as u64 {
                    break;
                }
                cells[j] = 0;
            }
        }
    }

    #[test]
    fn cauchy_gf3_has_three_solutions() {
        let c = FiniteCarrier::gf(3).unwrap();
        let r = feq_solve_brute(&lookup("cauchy-add").unwrap(), &["f"], &c, &none(), B).unwrap();
        assert_eq!(values(&r), vec![vec![vec![0, 0, 0]], vec![vec![0, 1, 2]], vec![vec![0, 2, 1]]]);
        assert!(r.to_string().starts_with("cauchy-add over GF(3): 3 solutions"));
    }

    #[test]
    fn leibniz_gf5_only_zero() {
        let c = FiniteCarrier::gf(5).unwrap();
        let r = feq_solve_brute(&lookup("leibniz").unwrap(), &["f"], &c, &none(), B).unwrap();
        assert_eq!(values(&r), vec![vec![vec![0; 5]]]);
    }

    #[test]
    fn hosszu_gf5_matches_oracle() {
        let c = FiniteCarrier::gf(5).unwrap();
        let r = feq_solve_brute(&lookup("hosszu").unwrap(), &["f"], &c, &none(), B).unwrap();
        let oracle = enumerate(&c, 1, &|t| {
            let f = &t[0];
            (0..5u64).all(|x| {
                (0..5u64).all(|y| {
                    let s = c.sub(c.add(x, y), c.mul(x, y));
                    c.add(f[s as usize], f[c.mul(x, y) as usize]) == c.add(f[x as usize], f[y as usize])
                })
            })
        });
        assert_eq!(values(&r), oracle);
        // f - f(0) is additive for every solution, and constants are included
        assert_eq!(r.solutions.len(), 25);
        for s in &r.solutions {
            let f = &s[0].values;
            let a: Vec<u64> = f.iter().map(|&v| c.sub(v, f[0])).collect();
            assert!((0..5u64).all(|x| (0..5u64).all(|y| a[c.add(x, y) as usize] == c.add(a[x as usize], a[y as usize]))));
        }
    }

    #[test]
    fn solutions_recheck() {
        let c = FiniteCarrier::gf(5).unwrap();
        for name in ["cauchy-exp", "cauchy-log", "cauchy-mult", "jensen", "ger-hom", "opp2", "opp3"] {
            let eq = lookup(name).unwrap();
            let r = feq_solve_brute(&eq, &["f"], &c, &none(), B).unwrap();
            for s in &r.solutions {
                let b = HashMap::from([("f".to_string(), s[0].to_fn())]);
                let chk = feq_check(&c, &eq, &b, &none(), Mode::Exhaustive, B).unwrap();
                assert!(chk.passed(), "{name}: {chk}");
            }
        }
    }

    #[test]
    fn pair_equation_gf3() {
        let c = FiniteCarrier::gf(3).unwrap();
        let r = feq_solve_brute(&lookup("cl-pair").unwrap(), &["f", "g"], &c, &none(), B).unwrap();
        let oracle = enumerate(&c, 2, &|t| {
            let (f, g) = (&t[0], &t[1]);
            (0..3u64).all(|x| {
                (0..3u64).all(|y| {
                    let l = c.sub(c.sub(f[c.add(x, y) as usize], f[x as usize]), f[y as usize]);
                    let r = c.sub(c.sub(g[c.mul(x, y) as usize], c.mul(x, g[y as usize])), c.mul(y, g[x as usize]));
                    l == r
                })
            })
        });
        assert_eq!(values(&r), oracle);
        assert_eq!(r.solutions.len(), 9);
    }

    #[test]
    fn alien_agrees_with_solver() {
        let eq = lookup("alien-c22").unwrap();
        for p in [3u64, 5] {
            let c = FiniteCarrier::gf(p).unwrap();
            let runs = solve_all_units(&eq, &["f"], &c, B).unwrap();
            assert_eq!(runs.len(), ((p - 1) * (p - 1)) as usize);
            for r in runs {
                let get = |n: &str| r.params.iter().find(|(k, _)| k == n).unwrap().1;
                let a = alien_check(get("lambda"), get("mu"), p, B).unwrap();
                let sol: Vec<Vec<u64>> = r.solutions.iter().map(|s| s[0].values.clone()).collect();
                assert_eq!(sol, a.solutions);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let c = FiniteCarrier::gf(5).unwrap();
        let r = feq_solve_brute(&lookup("cl-pair").unwrap(), &["f", "g"], &c, &none(), 1000);
        assert!(matches!(r, Err(Error::BudgetExceeded { needed, budget: 1000 }) if needed == 5u128.pow(10)));
    }

    #[test]
    fn input_errors() {
        let c = FiniteCarrier::gf(3).unwrap();
        let eq = lookup("cl-pair").unwrap();
        assert_eq!(feq_solve_brute(&eq, &["f"], &c, &none(), B), Err(Error::UnboundSymbol("g".into())));
        assert!(feq_solve_brute(&eq, &[], &c, &none(), B).is_err());
        assert!(feq_solve_brute(&eq, &["f", "f"], &c, &none(), B).is_err());
    }
}
