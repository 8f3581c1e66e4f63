//! Exact arithmetic substrate.

mod carrier;
mod gcd;
mod poly;
mod ratfunc;
mod rational;

pub use carrier::{carrier_table, CarrierKind, CarrierTable, FiniteCarrier, DEFAULT_CARRIER_BUDGET};
pub use gcd::poly_gcd;
pub use poly::{Monomial, MultiPoly};
pub use ratfunc::RatFunc;
pub use rational::{binomial, factorial, fmt_q, parse_q, q, qi, Q};
