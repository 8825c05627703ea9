//! Exact verification and structure analysis of finite-dimensional Yetter-Drinfeld Hopf
//! algebras over group rings of finite abelian groups, with scalars in cyclotomic fields.

pub mod abgroup;
pub mod catalog;
pub mod commalg;
pub mod checks;
pub mod cyclo;
pub mod error;
pub mod exactla;
pub mod integrals;
pub mod io;
#[cfg(test)]
mod testdata;
pub mod ydhopf;
pub mod ydmod;

pub use cyclo::{CycNum, CycPoly};
pub use error::{Result, YdhError};
