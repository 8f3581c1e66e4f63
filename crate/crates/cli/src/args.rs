//! Parsing of the small textual arguments shared by the subcommands.

use std::collections::HashMap;
use std::sync::Arc;

use dercalc_core::algebra::parse_q;
use dercalc_core::derivation::Derivation;
use dercalc_core::domain::{parity, Domain, IntegerWindow, UnaryFn};
use dercalc_core::feq::{eval_constant, expr_function, FnTable};
use dercalc_core::{FieldTower, FiniteCarrier, Q};

use crate::CliError;

/// Splits a list on commas or semicolons, dropping empty items.
pub fn split_list(s: &str) -> Vec<&str> {
    s.split([',', ';']).map(str::trim).filter(|x| !x.is_empty()).collect()
}

pub fn rationals(s: &str) -> Result<Vec<Q>, CliError> {
    split_list(s).into_iter().map(|x| Ok(parse_q(x)?)).collect()
}

/// `1,2;3,4` as a list of vectors (vectors separated by `;`).
pub fn vectors(s: &str) -> Result<Vec<Vec<Q>>, CliError> {
    s.split(';')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|v| v.split(',').map(|x| Ok(parse_q(x.trim())?)).collect())
        .collect()
}

/// `key=value` pairs separated by commas.
pub fn assignments(s: &str) -> Result<Vec<(String, String)>, CliError> {
    split_list(s)
        .into_iter()
        .map(|a| {
            let (k, v) = a.split_once('=').ok_or_else(|| CliError::Usage(format!("expected `name=value`, got `{a}`")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

/// Derivation definitions such as `d(t) = 1, d(s) = 1/(2*s)`. Several
/// derivations may be given; they are returned in order of first mention.
pub fn derivations(tower: &FieldTower, defs: &[String]) -> Result<Vec<(String, Derivation)>, CliError> {
    let mut order: Vec<String> = vec![];
    let mut values: HashMap<String, Vec<(String, String)>> = HashMap::new();
    for def in defs {
        for item in def.split([',', ';']).map(str::trim).filter(|x| !x.is_empty()) {
            let (lhs, rhs) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected `d(t) = value`, got `{item}`")))?;
            let lhs = lhs.trim();
            let (name, gen) = match lhs.strip_suffix(')').and_then(|l| l.split_once('(')) {
                Some((n, g)) => (n.trim().to_string(), g.trim().to_string()),
                None => ("d".to_string(), lhs.to_string()),
            };
            if !order.contains(&name) {
                order.push(name.clone());
            }
            values.entry(name).or_default().push((gen, rhs.trim().to_string()));
        }
    }
    order
        .into_iter()
        .map(|n| {
            let v = &values[&n];
            let pairs: Vec<(&str, &str)> = v.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            Ok((n.clone(), Derivation::define_str(tower, &pairs)?))
        })
        .collect()
}

/// `name(g) = value` lines for a derivation.
pub fn format_derivation(name: &str, d: &Derivation) -> Vec<(String, String)> {
    d.tower()
        .names()
        .iter()
        .map(|g| (format!("{name}({g})"), d.value(g).map(|v| v.to_string()).unwrap_or_default()))
        .collect()
}

/// Parses `f=EXPR` into a name and a body.
pub fn fn_binding(s: &str) -> Result<(String, String), CliError> {
    let (n, b) = s.split_once('=').ok_or_else(|| CliError::Usage(format!("expected `f=EXPR`, got `{s}`")))?;
    Ok((n.trim().to_string(), b.trim().to_string()))
}

/// A carrier that functions can be written for.
pub trait FnDomain: Domain + 'static {
    fn builtin(&self, name: &str) -> Option<UnaryFn<Self::Elem>>;
    /// A table such as `[0, 1, 4, 4, 1]`, where supported.
    fn table(&self, _text: &str) -> Result<Option<UnaryFn<Self::Elem>>, CliError> {
        Ok(None)
    }
}

impl FnDomain for FiniteCarrier {
    fn builtin(&self, name: &str) -> Option<UnaryFn<u64>> {
        match name {
            "zero" => Some(Arc::new(|_: &u64| Some(0))),
            "id" => Some(Arc::new(|x: &u64| Some(*x))),
            _ => None,
        }
    }

    fn table(&self, text: &str) -> Result<Option<UnaryFn<u64>>, CliError> {
        if text.trim_start().starts_with('[') {
            Ok(Some(FnTable::parse(self, text)?.to_fn()))
        } else {
            Ok(None)
        }
    }
}

impl FnDomain for IntegerWindow {
    fn builtin(&self, name: &str) -> Option<UnaryFn<Q>> {
        match name {
            "zero" => Some(Arc::new(|_: &Q| Some(Q::from_integer(0.into())))),
            "id" => Some(Arc::new(|x: &Q| Some(x.clone()))),
            "parity" => Some(Arc::new(parity)),
            _ => None,
        }
    }
}

/// A function from a builtin name, a table, or an expression in `x`.
pub fn function<D: FnDomain>(d: &D, body: &str, params: &HashMap<String, D::Elem>) -> Result<UnaryFn<D::Elem>, CliError> {
    if let Some(f) = d.builtin(body.trim()) {
        return Ok(f);
    }
    if let Some(f) = d.table(body)? {
        return Ok(f);
    }
    Ok(expr_function(d, body, params)?)
}

pub fn params<D: Domain>(d: &D, list: &[String]) -> Result<HashMap<String, D::Elem>, CliError> {
    let mut out = HashMap::new();
    for item in list {
        for (k, v) in assignments(item)? {
            out.insert(k, eval_constant(d, &v, &HashMap::new())?);
        }
    }
    Ok(out)
}

/// A table of residues, or an expression in `x` tabulated on GF(p).
pub fn residue_table(c: &FiniteCarrier, s: &str) -> Result<Vec<u64>, CliError> {
    if s.contains(',') || s.trim_start().starts_with('[') {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        return body
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| CliError::Usage(format!("bad residue `{}`", x.trim()))))
            .collect();
    }
    let f = expr_function(c, s, &HashMap::new())?;
    c.elements()
        .map(|x| f(&x).ok_or_else(|| CliError::Usage(format!("`{s}` is undefined at {x}"))))
        .collect()
}

pub fn read_source(s: &str) -> Result<String, CliError> {
    std::fs::read_to_string(s).map_err(|e| CliError::Usage(format!("cannot read `{s}`: {e}")))
}
