//! Exact p-jet calculus: jet lattices, delta-function pairings, classical
//! jet representations, a double Wick contraction engine and the abelian
//! charges of the multi-dimensional Virasoro extension.

pub mod charges;
pub mod cli;
pub mod cocycles;
pub mod deltacalc;
pub mod error;
pub mod exactpoly;
pub mod jetreps;
pub mod jetsums;
pub mod multiindex;
pub mod rational;
pub mod sampling;
pub mod wickcocycle;

pub use error::{JetError, Result};
