mod cocycle;
pub(crate) mod der;
mod feq;
mod hod;
mod multi;
mod prime;
mod tower;

use dercalc_core::cocycle::Mode;
use dercalc_core::domain::CarrierSpec;

use crate::{CheckMode, Cmd, CliError, Out, Verdict};

pub fn dispatch(cmd: Cmd, out: &mut Out, budget: u64) -> Verdict {
    match cmd {
        Cmd::Tower(c) => tower::run(c, out),
        Cmd::Der(c) => der::run(c, out),
        Cmd::Hod(c) => hod::run(c, out),
        Cmd::Cocycle(c) => cocycle::run(c, out, budget),
        Cmd::Char(c) => prime::run(c, out, budget),
        Cmd::Multi(c) => multi::run(c, out),
        Cmd::Feq(c) => feq::run(c, out, budget),
        Cmd::Run { .. } => Err(CliError::Usage("scripts cannot run other scripts".into())),
    }
}

pub(crate) fn mode(m: &CheckMode) -> Result<Mode, CliError> {
    match m.mode.trim() {
        "exhaustive" => Ok(Mode::Exhaustive),
        s => {
            let n = s
                .strip_prefix("sampled:")
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| CliError::Usage(format!("mode `{s}`: expected `exhaustive` or `sampled:N`")))?;
            Ok(Mode::Sampled { n, seed: m.seed })
        }
    }
}

pub(crate) fn carrier(s: &str) -> Result<CarrierSpec, CliError> {
    s.parse::<CarrierSpec>().map_err(|e| CliError::Usage(e.to_string()))
}
