//! Classical jet realizations of the current algebra and of vector fields,
//! with exact bracket closure.
//!
//! Operators act on (jet lattice) ⊗ (rep space) in the Taylor basis
//! `φ_m = ∂_m φ(q)`, with entries polynomial in `q`. Equality of operators is
//! equality of those polynomials, which covers every numeric `q` at once.

mod algebra;
mod matrix;
mod operators;

pub use algebra::{GlRep, MatrixRep, StructureConstants};
pub use matrix::{PolyMatrix, RatMatrix};
pub use operators::{
    bracket_diff, bracket_gauge, bracket_mixed, density_action, diff_operator, divergence,
    gauge_bracket, gauge_operator, lie_bracket, vector_action, DiffJetOperator, GaugeJetOperator,
};
