use dercalc_core::algebra::fmt_q;
use dercalc_core::multiadditive::{binomial_check, delta, polarization_check, recover_components, IdentityCheck, SymMultiMap};
use dercalc_core::MultiPoly;

use crate::args::{rationals, read_source, vectors};
use crate::{CliError, MultiCmd, MultiMapArg, Out, Verdict};

fn map(a: &MultiMapArg) -> Result<SymMultiMap, CliError> {
    let text = match a.map.strip_prefix('@') {
        Some(path) => read_source(path)?,
        None => a.map.replace(';', "\n"),
    };
    Ok(SymMultiMap::parse(&text, a.dim)?)
}

fn poly(text: &str, dim: usize) -> Result<MultiPoly, CliError> {
    let names: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(MultiPoly::parse(&MultiPoly::with_vars(&refs), text)?)
}

fn identity(kind: &str, c: &IdentityCheck, out: &mut Out) -> bool {
    out.emit(
        kind,
        &[("lhs", fmt_q(&c.lhs)), ("rhs", fmt_q(&c.rhs)), ("holds", c.holds().to_string())],
        format!("{kind}: {c}"),
    );
    c.holds()
}

pub fn run(cmd: MultiCmd, out: &mut Out) -> Verdict {
    match cmd {
        MultiCmd::Trace { a, x } => {
            let v = map(&a)?.trace(&rationals(&x)?)?;
            out.emit("value", &[("x", x.clone()), ("value", fmt_q(&v))], format!("A*({x}) = {}", fmt_q(&v)));
            Ok(true)
        }
        MultiCmd::Delta { poly: p, dim, ys, x } => {
            let p = poly(&p, dim)?;
            let (ys_v, x_v) = (vectors(&ys)?, rationals(&x)?);
            if x_v.len() != dim || ys_v.iter().any(|y| y.len() != dim) {
                return Err(CliError::Usage(format!("vectors must have {dim} entries")));
            }
            let v = delta(&|z| p.eval(z), &ys_v, &x_v);
            out.emit("value", &[("ys", ys.clone()), ("x", x.clone()), ("value", fmt_q(&v))], format!("delta = {}", fmt_q(&v)));
            Ok(true)
        }
        MultiCmd::Polarize { a, ys, x } => {
            let c = polarization_check(&map(&a)?, &vectors(&ys)?, &rationals(&x)?)?;
            Ok(identity("polarization", &c, out))
        }
        MultiCmd::Binomial { a, x, y } => {
            let c = binomial_check(&map(&a)?, &rationals(&x)?, &rationals(&y)?)?;
            Ok(identity("binomial", &c, out))
        }
        MultiCmd::Recover { poly: p, n, dim } => {
            let p = poly(&p, dim)?;
            let r = recover_components(&|z| p.eval(z), n, dim)?;
            for c in &r.components {
                for (idx, v) in c.coeffs() {
                    let i: Vec<String> = idx.iter().map(usize::to_string).collect();
                    out.emit(
                        "component",
                        &[("arity", c.arity().to_string()), ("index", i.join(",")), ("value", fmt_q(v))],
                        format!("A{}({}) = {}", c.arity(), i.join(","), fmt_q(v)),
                    );
                }
            }
            Ok(true)
        }
    }
}
