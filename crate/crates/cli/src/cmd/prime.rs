use dercalc_core::cocycle::{alien_check, char_decompose};
use dercalc_core::FiniteCarrier;

use crate::args::residue_table;
use crate::{CharCmd, Out, Verdict};

fn list(v: &[u64]) -> String {
    let s: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("[{}]", s.join(", "))
}

pub fn run(cmd: CharCmd, out: &mut Out, budget: u64) -> Verdict {
    match cmd {
        CharCmd::Decompose { p, f, g } => {
            let c = FiniteCarrier::gf(p)?;
            let (ft, gt) = (residue_table(&c, &f)?, residue_table(&c, &g)?);
            let d = char_decompose(p, &ft, &gt)?;
            out.emit(
                "decomposition",
                &[("p", p.to_string()), ("alpha", d.alpha.to_string()), ("beta", d.beta.to_string()), ("phi", list(&d.phi))],
                format!("GF({p}): alpha = {} x, beta = {} x, phi = {}", d.alpha, d.beta, list(&d.phi)),
            );
            out.note("f = beta + alpha(x^2)/2 - x alpha(x), g = phi + alpha");
            Ok(true)
        }
        CharCmd::Alien { p, lambda, mu } => {
            let r = alien_check(lambda, mu, p, budget)?;
            out.emit(
                "alien",
                &[
                    ("p", p.to_string()),
                    ("lambda", r.lambda.to_string()),
                    ("mu", r.mu.to_string()),
                    ("solutions", r.solutions.len().to_string()),
                    ("all_derivations", r.all_derivations.to_string()),
                ],
                format!(
                    "GF({p}), lambda = {}, mu = {}: {} solution{}",
                    r.lambda,
                    r.mu,
                    r.solutions.len(),
                    if r.solutions.len() == 1 { "" } else { "s" }
                ),
            );
            for s in &r.solutions {
                out.emit("solution", &[("f", list(s))], format!("  f = {}", list(s)));
            }
            out.note(format!(
                "every solution solves both equations separately: {}",
                if r.all_derivations { "yes" } else { "no" }
            ));
            Ok(r.all_derivations)
        }
    }
}
