use std::sync::Arc;

use dercalc_core::algebra::fmt_q;
use dercalc_core::hod::{gamma_check, gamma_factor, hod_construct_next, GammaTable, HigherDerivation};
use dercalc_core::MultiPoly;

use crate::args::{read_source, split_list};
use crate::{CliError, GammaArgs, HodArgs, HodCmd, Out, Verdict};

fn builtin(kind: &str, n: usize) -> Result<GammaTable, CliError> {
    match kind {
        "binomial" => Ok(GammaTable::binomial(n)),
        "ones" => Ok(GammaTable::ones(n)),
        k => Err(CliError::Usage(format!("unknown table `{k}`; expected `binomial` or `ones`"))),
    }
}

fn table(g: &GammaArgs) -> Result<GammaTable, CliError> {
    match (&g.table, &g.gamma, g.n) {
        (Some(path), _, n) => {
            let text = read_source(path)?;
            let text = match n {
                Some(n) => format!("n {n}\n{text}"),
                None => text,
            };
            Ok(GammaTable::parse(&text)?)
        }
        (None, Some(kind), Some(n)) => builtin(kind, n),
        (None, Some(_), None) => Err(CliError::Usage("--gamma needs --n".into())),
        (None, None, _) => Err(CliError::Usage("give --table FILE or --gamma binomial|ones".into())),
    }
}

fn poly(vars: &Arc<Vec<String>>, s: &str) -> Result<MultiPoly, CliError> {
    Ok(MultiPoly::parse(vars, s)?)
}

fn define(h: &HodArgs) -> Result<HigherDerivation, CliError> {
    let gamma = table(&h.gamma)?;
    let names: Vec<&str> = split_list(&h.vars);
    let vars = MultiPoly::with_vars(&names);
    let n = gamma.order();
    let mut values = vec![vec![MultiPoly::zero(&vars); names.len()]; n];
    for item in h.values.iter().flat_map(|v| split_list(v)) {
        let bad = || CliError::Usage(format!("expected `dK(v) = poly`, got `{item}`"));
        let (lhs, rhs) = item.split_once('=').ok_or_else(bad)?;
        let (head, var) = lhs.trim().strip_suffix(')').and_then(|l| l.split_once('(')).ok_or_else(bad)?;
        let k: usize = head.trim().trim_start_matches('d').parse().map_err(|_| bad())?;
        let j = names.iter().position(|v| *v == var.trim()).ok_or_else(bad)?;
        if k == 0 || k > n {
            return Err(CliError::Usage(format!("order {k} outside 1..={n}")));
        }
        values[k - 1][j] = poly(&vars, rhs)?;
    }
    Ok(HigherDerivation::define(gamma, &vars, values)?)
}

fn show(h: &HigherDerivation, out: &mut Out) {
    for k in 1..=h.order() {
        for (j, v) in h.vars().iter().enumerate() {
            let lhs = format!("d{k}({v})");
            let val = h.generator_value(k, j).to_string();
            out.emit("value", &[("expr", lhs.clone()), ("value", val.clone())], format!("{lhs} = {val}"));
        }
    }
}

pub fn run(cmd: HodCmd, out: &mut Out) -> Verdict {
    match cmd {
        HodCmd::GammaCheck(g) => {
            let t = table(&g)?;
            let bad = gamma_check(&t);
            for &(i, j, k) in &bad {
                let l = t.get(i + j, k) * t.get(i, j);
                let r = t.get(i, j + k) * t.get(j, k);
                out.emit(
                    "violation",
                    &[("i", i.to_string()), ("j", j.to_string()), ("k", k.to_string()), ("lhs", fmt_q(&l)), ("rhs", fmt_q(&r))],
                    format!("violation at (i, j, k) = ({i}, {j}, {k}): {} != {}", fmt_q(&l), fmt_q(&r)),
                );
            }
            let ok = bad.is_empty();
            out.emit(
                "verdict",
                &[("order", t.order().to_string()), ("violations", bad.len().to_string())],
                if ok {
                    format!("cocycle condition holds up to order {}", t.order())
                } else {
                    format!("cocycle condition fails: {} violating triples", bad.len())
                },
            );
            Ok(ok)
        }
        HodCmd::GammaFactor(g) => {
            let f = gamma_factor(&table(&g)?)?;
            for (i, v) in f.0.iter().enumerate() {
                out.emit("gamma", &[("i", i.to_string()), ("value", fmt_q(v))], format!("gamma({i}) = {}", fmt_q(v)));
            }
            Ok(true)
        }
        HodCmd::Define(h) => {
            show(&define(&h)?, out);
            Ok(true)
        }
        HodCmd::Eval { h, k, expr } => {
            let hd = define(&h)?;
            let p = poly(hd.vars(), &expr)?;
            let orders: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (0..=hd.order()).collect(),
            };
            for k in orders {
                let v = hd.eval(k, &p)?.to_string();
                let lhs = format!("d{k}({expr})");
                out.emit("value", &[("expr", lhs.clone()), ("value", v.clone())], format!("{lhs} = {v}"));
            }
            Ok(true)
        }
        HodCmd::Construct { h, choice, next_table } => {
            let hd = define(&h)?;
            let next = match (&next_table, &h.gamma.gamma) {
                (Some(path), _) => GammaTable::parse(&read_source(path)?)?,
                (None, Some(kind)) => builtin(kind, hd.order() + 1)?,
                (None, None) => return Err(CliError::Usage("--next-table is needed when the table comes from a file".into())),
            };
            let choice: Vec<MultiPoly> = split_list(&choice).into_iter().map(|c| poly(hd.vars(), c)).collect::<Result<_, _>>()?;
            if choice.len() != hd.vars().len() {
                return Err(CliError::Usage(format!("--choice needs {} values", hd.vars().len())));
            }
            let ext = hod_construct_next(&hd, &next, &choice)?;
            show(&ext, out);
            out.emit(
                "verdict",
                &[("order", ext.order().to_string()), ("product_rule", "ok".into())],
                format!("order {} constructed; product rule verified on monomials of degree <= 2", ext.order()),
            );
            Ok(true)
        }
        HodCmd::Residual { h, k, p, q } => {
            let hd = define(&h)?;
            let r = hd.leibniz_residual(k, &poly(hd.vars(), &p)?, &poly(hd.vars(), &q)?)?;
            let zero = r.is_zero();
            out.emit(
                "residual",
                &[("k", k.to_string()), ("p", p.clone()), ("q", q.clone()), ("value", r.to_string())],
                format!("residual of order {k} on ({p}, {q}) = {r}"),
            );
            Ok(zero)
        }
    }
}
