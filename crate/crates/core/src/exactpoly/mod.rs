//! Exact polynomials in spatial variables and Laurent polynomials in the
//! contour variable `z`.

mod laurent;
mod parse;
mod poly;

pub use laurent::{LaurentPoly, LaurentVec};
pub use parse::{parse_terms, shift_column, split_components, Power, Term, Var};
pub use poly::{parse_poly_vec, Poly, PolyVec};

/// Default bound on `|k|` for any `z^k` produced by trajectory composition.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

/// The active degree cap: `JETVIR_MAX_DEGREE` if set and valid, else the
/// default.
pub fn degree_cap() -> u32 {
    std::env::var("JETVIR_MAX_DEGREE")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DEGREE_CAP)
}
