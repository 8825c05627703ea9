//! Exact arithmetic in cyclotomic fields Q(zeta_n) and polynomials over them.

mod cycpoly;
mod field;
mod num;
pub mod qpoly;
pub mod zfactor;

pub use cycpoly::{CycPoly, RootSplit};
pub use field::{cyclotomic_polynomial, field, lcm, totient, CycField};
pub use num::CycNum;

#[cfg(test)]
mod tests;
