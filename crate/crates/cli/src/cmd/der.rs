use std::collections::HashMap;

use dercalc_core::algebra::parse_q;
use dercalc_core::derivation::{
    independence_rank, iterate, leibniz_residual, mobius_residual, monomial_residual, nth_power_hom_residual,
    power_rule_residual, reflection_residual, square_rule_residual, AffineDerivation, Derivation, ElementMap,
};
use dercalc_core::expr::parse_expr;
use dercalc_core::tower::parse_tower;
use dercalc_core::{Error, FieldTower, TowerElement};

use crate::args::{assignments, derivations, format_derivation, rationals, split_list};
use crate::{CliError, DerArgs, DerCmd, Out, ResidualKind, Verdict};

pub(crate) struct Setup {
    pub tower: FieldTower,
    pub ders: Vec<(String, Derivation)>,
    pub slope: dercalc_core::Q,
}

pub(crate) fn setup(a: &DerArgs) -> Result<Setup, CliError> {
    let tower = parse_tower(&a.tower)?;
    let ders = derivations(&tower, &a.der)?;
    Ok(Setup { tower, ders, slope: parse_q(&a.slope)? })
}

/// Evaluates `text`, applying named derivations wherever they occur.
pub(crate) fn eval(tower: &FieldTower, ders: &[(String, Derivation)], text: &str) -> Result<TowerElement, CliError> {
    let e = parse_expr(text)?;
    let v = tower.eval_with(&e, &mut |f, x| match ders.iter().find(|(n, _)| n == f) {
        Some((_, d)) => d.eval(&x),
        None => Err(Error::UnknownFunction(f.to_string())),
    })?;
    Ok(v)
}

pub(crate) fn residual(s: &Setup, kind: &ResidualKind) -> Result<(String, TowerElement), CliError> {
    let d = &s.ders[0].1;
    let f = AffineDerivation::new(d.clone(), s.slope.clone());
    let el = |x: &str| eval(&s.tower, &s.ders, x);
    Ok(match kind {
        ResidualKind::Leibniz { x, y } => (format!("leibniz({x}, {y})"), leibniz_residual(d, &el(x)?, &el(y)?)?),
        ResidualKind::Power { k, x } => (format!("power(k = {k}, {x})"), power_rule_residual(&f, *k, &el(x)?)?),
        ResidualKind::Monomial { n, m, x, slope_g } => {
            let g = s.ders.get(1).map_or(d, |p| &p.1);
            let g = AffineDerivation::new(g.clone(), parse_q(slope_g)?);
            (format!("monomial(n = {n}, m = {m}, {x})"), monomial_residual(&f, &g, *n, *m, &el(x)?)?)
        }
        ResidualKind::Mobius { coeffs, n, x } => {
            let c = rationals(coeffs)?;
            if c.len() != 4 {
                return Err(CliError::Usage("--coeffs needs four values a,b,c,d".into()));
            }
            (format!("mobius({coeffs}; n = {n}, {x})"), mobius_residual(&f, [&c[0], &c[1], &c[2], &c[3]], *n, &el(x)?)?)
        }
        ResidualKind::Reflect { x } => (format!("reflect({x})"), reflection_residual(&f, &el(x)?)?),
        ResidualKind::Square { x } => (format!("square({x})"), square_rule_residual(&f, &el(x)?)?),
        ResidualKind::Nhom { n, x } => (format!("nhom(n = {n}, {x})"), nth_power_hom_residual(&f, *n, &el(x)?)?),
    })
}

pub fn run(cmd: DerCmd, out: &mut Out) -> Verdict {
    match cmd {
        DerCmd::Define(a) => {
            let s = setup(&a)?;
            for (name, d) in &s.ders {
                for (lhs, v) in format_derivation(name, d) {
                    out.emit("value", &[("expr", lhs.clone()), ("value", v.clone())], format!("{lhs} = {v}"));
                }
            }
        }
        DerCmd::Eval { d, expr } => {
            let s = setup(&d)?;
            let v = eval(&s.tower, &s.ders, &expr)?.to_string();
            out.emit("value", &[("expr", expr), ("value", v.clone())], v);
        }
        DerCmd::Residual { d, kind, expect_zero } => {
            let s = setup(&d)?;
            let (label, v) = residual(&s, &kind)?;
            let zero = v.is_zero();
            out.emit(
                "residual",
                &[("residual", label.clone()), ("value", v.to_string()), ("zero", zero.to_string())],
                format!("{label} = {v}"),
            );
            return Ok(zero || !expect_zero);
        }
        DerCmd::Bracket(a) => {
            let s = setup(&a)?;
            if s.ders.len() < 2 {
                return Err(CliError::Usage("bracket needs two derivations, e.g. --der 'd(t)=1' --der 'e(t)=t'".into()));
            }
            let (n1, d1) = &s.ders[0];
            let (n2, d2) = &s.ders[1];
            let b = Derivation::bracket(d1, d2)?;
            for (lhs, v) in format_derivation(&format!("[{n1}, {n2}]"), &b) {
                out.emit("value", &[("expr", lhs.clone()), ("value", v.clone())], format!("{lhs} = {v}"));
            }
        }
        DerCmd::Iterate { d, k, expr } => {
            let s = setup(&d)?;
            let (name, _) = &s.ders[0];
            let x = eval(&s.tower, &s.ders, &expr)?;
            for p in iterate(&s.ders[0].1, k) {
                let v = p.apply(&x)?.to_string();
                let lhs = format!("{name}^{}({expr})", p.power);
                out.emit("value", &[("expr", lhs.clone()), ("value", v.clone())], format!("{lhs} = {v}"));
            }
        }
        DerCmd::Rank { d, k, points, subst } => {
            let s = setup(&d)?;
            let pts = split_list(&points).into_iter().map(|p| eval(&s.tower, &s.ders, p)).collect::<Result<Vec<_>, _>>()?;
            let its = iterate(&s.ders[0].1, k);
            let maps: Vec<&dyn ElementMap> = its.iter().map(|m| m as &dyn ElementMap).collect();
            let sub = match subst {
                Some(txt) => Some(
                    assignments(&txt)?
                        .into_iter()
                        .map(|(k, v)| Ok((k, parse_q(&v)?)))
                        .collect::<Result<HashMap<_, _>, CliError>>()?,
                ),
                None => None,
            };
            let r = independence_rank(&maps, &pts, sub.as_ref())?;
            out.emit(
                "rank",
                &[("rank", r.to_string()), ("maps", maps.len().to_string()), ("points", pts.len().to_string())],
                format!("rank {r} of {} maps on {} points", maps.len(), pts.len()),
            );
        }
    }
    Ok(true)
}
