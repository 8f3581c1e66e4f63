use std::collections::HashMap;
use std::fmt::Display;

use dercalc_core::algebra::{fmt_q, parse_q};
use dercalc_core::cocycle::{
    cauchy_difference, cocycle_extend_positive, cocycle_primitive, cocycle_verify, leibniz_coboundary_check,
    leibniz_difference, parse_axioms, CheckResult, Cocycle2, Mode, Outcome, Report,
};
use dercalc_core::domain::{CarrierSpec, Domain, IntegerWindow};
use dercalc_core::feq::expr_function2;

use super::{carrier, mode};
use crate::args::{fn_binding, function, FnDomain};
use crate::{CliError, CocycleCmd, MapArgs, Out, Verdict};

pub(crate) fn emit_check<E: Display>(c: &CheckResult<E>, out: &mut Out) {
    let mut f = vec![("name", c.name.clone())];
    match &c.outcome {
        Outcome::Pass { checked, skipped } => {
            f.push(("status", "pass".into()));
            f.push(("checked", checked.to_string()));
            f.push(("skipped", skipped.to_string()));
        }
        Outcome::Fail { witness, lhs, rhs } => {
            let w: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
            f.push(("status", "fail".into()));
            f.push(("vars", c.vars.to_string()));
            f.push(("witness", w.join(",")));
            f.push(("lhs", lhs.to_string()));
            f.push(("rhs", rhs.to_string()));
        }
        Outcome::Void(why) => {
            f.push(("status", "void".into()));
            f.push(("reason", why.clone()));
        }
    }
    out.emit("check", &f, c.to_string());
}

pub(crate) fn emit_report<E: Display>(r: &Report<E>, out: &mut Out) -> bool {
    for c in &r.0 {
        emit_check(c, out);
    }
    r.passed()
}

fn binary<D: FnDomain>(d: &D, body: &str) -> Result<Cocycle2<D>, CliError> {
    let f = expr_function2(d, body, &HashMap::new())?;
    Ok(Cocycle2::new(d.clone(), move |a: &D::Elem, b: &D::Elem| f(a, b)))
}

fn maps<D: FnDomain>(d: &D, m: &MapArgs) -> Result<(Option<Cocycle2<D>>, Option<Cocycle2<D>>), CliError> {
    let (mut f, mut g) = (None, None);
    if let Some(func) = &m.func {
        let (_, body) = fn_binding(func)?;
        let u = function(d, &body, &HashMap::new())?;
        f = Some(cauchy_difference(d, u.clone()));
        g = Some(leibniz_difference(d, u));
    }
    if let Some(b) = &m.big_f {
        f = Some(binary(d, b)?);
    }
    if let Some(b) = &m.big_g {
        g = Some(binary(d, b)?);
    }
    if f.is_none() && g.is_none() {
        return Err(CliError::Usage("give --fn f=EXPR, --F or --G".into()));
    }
    Ok((f, g))
}

fn show<E: Display>(v: Option<E>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn diff<D: FnDomain>(d: &D, func: &str, out: &mut Out) -> Verdict {
    let (_, body) = fn_binding(func)?;
    let u = function(d, &body, &HashMap::new())?;
    let f = cauchy_difference(d, u.clone());
    let g = leibniz_difference(d, u);
    for a in d.points() {
        for b in d.points() {
            let (fv, gv) = (show(f.eval(&a, &b)), show(g.eval(&a, &b)));
            out.emit(
                "diff",
                &[("a", a.to_string()), ("b", b.to_string()), ("F", fv.clone()), ("G", gv.clone())],
                format!("({a}, {b}): F = {fv}, G = {gv}"),
            );
        }
    }
    Ok(true)
}

fn verify<D: FnDomain>(d: &D, m: &MapArgs, axioms: &str, mode: Mode, budget: u64, out: &mut Out) -> Verdict {
    let (f, g) = maps(d, m)?;
    let axioms = parse_axioms(axioms)?;
    let r = cocycle_verify(f.as_ref(), g.as_ref(), &axioms, mode, budget)?;
    Ok(emit_report(&r, out))
}

fn ld<D: FnDomain>(d: &D, body: &str, mode: Mode, budget: u64, out: &mut Out) -> Verdict {
    let r = leibniz_coboundary_check(&binary(d, body)?, mode, budget)?;
    Ok(emit_report(&r, out))
}

pub fn run(cmd: CocycleCmd, out: &mut Out, budget: u64) -> Verdict {
    match cmd {
        CocycleCmd::Diff { carrier: c, func } => match carrier(&c)? {
            CarrierSpec::Finite(k) => diff(&k, &func, out),
            CarrierSpec::Window(w) => diff(&w, &func, out),
        },
        CocycleCmd::Verify { maps, axioms, mode: m } => {
            let m2 = mode(&m)?;
            match carrier(&maps.carrier)? {
                CarrierSpec::Finite(k) => verify(&k, &maps, &axioms, m2, budget, out),
                CarrierSpec::Window(w) => verify(&w, &maps, &axioms, m2, budget, out),
            }
        }
        CocycleCmd::Extend { r, big_f, big_g, show } => {
            let pos = IntegerWindow::new(1, r);
            let f = binary(&pos, &big_f)?;
            let g = big_g.as_deref().map(|b| binary(&pos, b)).transpose()?;
            let ext = cocycle_extend_positive(&f, g.as_ref(), budget)?;
            out.note(format!("extended to Z[{}..{}]", -r, r));
            let ok = emit_report(&ext.report, out);
            if show {
                let w = IntegerWindow::symmetric(r);
                for a in w.points() {
                    for b in w.points() {
                        let v = show_q(ext.f.eval(&a, &b));
                        out.emit("value", &[("a", a.to_string()), ("b", b.to_string()), ("F", v.clone())], format!("F({a}, {b}) = {v}"));
                    }
                }
            }
            Ok(ok)
        }
        CocycleCmd::Primitive { r, big_f, f1 } => {
            let w = IntegerWindow::symmetric(r);
            let f = binary(&w, &big_f)?;
            let t = cocycle_primitive(&f, &parse_q(&f1)?)?;
            for (n, v) in &t {
                out.emit("value", &[("n", n.to_string()), ("f", fmt_q(v))], format!("f({n}) = {}", fmt_q(v)));
            }
            Ok(true)
        }
        CocycleCmd::LdCheck { carrier: c, big_d, mode: m } => {
            let m2 = mode(&m)?;
            match carrier(&c)? {
                CarrierSpec::Finite(k) => ld(&k, &big_d, m2, budget, out),
                CarrierSpec::Window(w) => ld(&w, &big_d, m2, budget, out),
            }
        }
    }
}

fn show_q(v: Option<dercalc_core::Q>) -> String {
    v.map_or_else(|| "-".to_string(), |x| fmt_q(&x))
}
