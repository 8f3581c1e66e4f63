use std::collections::HashMap;

use dercalc_core::cocycle::Mode;
use dercalc_core::domain::{CarrierSpec, UnaryFn};
use dercalc_core::feq::{
    corpus, feq_check, feq_solve_brute, logarithmic_zero_check, lookup, solve_all_units, t1431_check, Equation,
    SolveReport,
};

use super::cocycle::emit_check;
use super::{carrier, mode};
use crate::args::{fn_binding, function, params, split_list, FnDomain};
use crate::{CliError, FeqCmd, Out, Verdict};

pub(crate) fn equation(s: &str) -> Result<Equation, CliError> {
    if s.contains('=') {
        Ok(Equation::parse(s)?)
    } else {
        Ok(lookup(s)?)
    }
}

fn note(eq: &Equation, out: &mut Out) {
    if let Some(n) = &eq.note {
        out.emit("note", &[("note", n.clone())], format!("note: {n}"));
    }
}

fn check<D: FnDomain>(
    d: &D,
    eq: &Equation,
    funcs: &[String],
    ps: &[String],
    m: Mode,
    budget: u64,
    out: &mut Out,
) -> Verdict {
    let ps = params(d, ps)?;
    let mut bind: HashMap<String, UnaryFn<D::Elem>> = HashMap::new();
    for f in funcs {
        let (name, body) = fn_binding(f)?;
        bind.insert(name, function(d, &body, &ps)?);
    }
    let r = feq_check(d, eq, &bind, &ps, m, budget)?;
    emit_check(&r, out);
    note(eq, out);
    Ok(r.passed())
}

fn emit_solve(r: &SolveReport, out: &mut Out) {
    if out.format == crate::Format::Text {
        out.block("solve", r.to_string().trim_end());
        return;
    }
    let ps: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    out.emit(
        "solve",
        &[
            ("equation", r.equation.clone()),
            ("carrier", r.carrier.to_string()),
            ("params", ps.join(",")),
            ("solutions", r.solutions.len().to_string()),
        ],
        "",
    );
    for s in &r.solutions {
        let fields: Vec<(&str, String)> = r.unknowns.iter().zip(s).map(|(u, t)| (u.as_str(), t.to_string())).collect();
        out.emit("solution", &fields, "");
    }
    note_str(&r.note, out);
}

fn note_str(n: &Option<String>, out: &mut Out) {
    if let Some(n) = n {
        out.emit("note", &[("note", n.clone())], format!("note: {n}"));
    }
}

pub fn run(cmd: FeqCmd, out: &mut Out, budget: u64) -> Verdict {
    match cmd {
        FeqCmd::Check { eq, carrier: c, funcs, params: ps, mode: m } => {
            let eq = equation(&eq)?;
            let m = mode(&m)?;
            match carrier(&c)? {
                CarrierSpec::Finite(k) => check(&k, &eq, &funcs, &ps, m, budget, out),
                CarrierSpec::Window(w) => check(&w, &eq, &funcs, &ps, m, budget, out),
            }
        }
        FeqCmd::Solve { eq, carrier: c, unknowns, params: ps } => {
            let eq = equation(&eq)?;
            let CarrierSpec::Finite(k) = carrier(&c)? else {
                return Err(CliError::Usage("solving needs a finite carrier (gf:P or zmod:N)".into()));
            };
            let names: Vec<String> = match &unknowns {
                Some(u) => split_list(u).into_iter().map(String::from).collect(),
                None => eq.functions().into_iter().collect(),
            };
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let reports = match ps.as_deref() {
                Some("all-units") => solve_all_units(&eq, &refs, &k, budget)?,
                Some(list) => vec![feq_solve_brute(&eq, &refs, &k, &params(&k, &[list.to_string()])?, budget)?],
                None => vec![feq_solve_brute(&eq, &refs, &k, &HashMap::new(), budget)?],
            };
            for r in &reports {
                emit_solve(r, out);
            }
            Ok(true)
        }
        FeqCmd::List => {
            for e in corpus() {
                out.emit(
                    "equation",
                    &[("name", e.name.into()), ("equation", e.text.into()), ("open", e.open.to_string())],
                    format!("{:<12} {}{}", e.name, e.text, if e.open { "  (open problem)" } else { "" }),
                );
            }
            Ok(true)
        }
        FeqCmd::Logzero { carrier: c, units } => {
            let CarrierSpec::Finite(k) = carrier(&c)? else {
                return Err(CliError::Usage("needs a finite carrier".into()));
            };
            let r = logarithmic_zero_check(&k, units, budget)?;
            out.block("logzero", r.to_string().trim_end());
            Ok(true)
        }
        FeqCmd::Inversion { p } => {
            let r = t1431_check(p)?;
            out.block("inversion", r.to_string().trim_end());
            Ok(r.all_derivations)
        }
    }
}
