//! Exact differential-algebra workbench.
//!
//! Everything in this crate is computed exactly over the rationals or over
//! finite carriers `Z/nZ`; no floating point is used anywhere.
//!
//! Layout:
//! - [`algebra`]: rationals, multivariate polynomials, rational functions, finite carriers.
//! - [`expr`]: the expression grammar shared by towers, equations and sessions.
//! - [`tower`]: finitely generated field extensions of Q with canonical elements.
//! - [`derivation`]: derivations on towers, their extension, bracket, iterates and residuals.
//! - [`hod`]: higher-order derivations driven by a coefficient table.
//! - [`cocycle`]: Cauchy/Leibniz differences, cocycle axioms, sign-table extension, decomposition.
//! - [`multiadditive`]: symmetric multiadditive maps over Q^dim and polynomial functions.
//! - [`feq`]: functional-equation checking and brute-force solving on finite carriers.

pub mod algebra;
pub mod cocycle;
pub mod derivation;
pub mod domain;
pub mod error;
pub mod expr;
pub mod feq;
pub mod hod;
pub mod multiadditive;
pub mod tower;

pub use algebra::{FiniteCarrier, MultiPoly, RatFunc, Q};
pub use error::{Error, Result};
pub use tower::{FieldTower, TowerElement};

/// Budget read from `DERCALC_BUDGET`, falling back to `default`.
pub fn budget_from_env(default: u64) -> u64 {
    std::env::var("DERCALC_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}
