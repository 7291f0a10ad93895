//! Seeded random inputs for property sweeps.

use rand::Rng;

use crate::exactpoly::{LaurentPoly, Poly};
use crate::multiindex::enumerate;
use crate::rational::{frac, Rational};

/// Small nonzero-biased rational with numerator in `-5..=5` and
/// denominator in `1..=3`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

/// Random polynomial of total degree at most `max_degree`; each monomial is
/// present with probability one half.
pub fn random_poly<R: Rng>(rng: &mut R, d: usize, max_degree: u32) -> Poly {
    let mut p = Poly::zero(d);
    for m in enumerate(d, max_degree).expect("d >= 1") {
        if rng.gen_bool(0.5) {
            p.add_term(m, random_rational(rng));
        }
    }
    p
}

pub fn random_poly_vec<R: Rng>(rng: &mut R, d: usize, len: usize, max_degree: u32) -> Vec<Poly> {
    (0..len).map(|_| random_poly(rng, d, max_degree)).collect()
}

/// Random Laurent polynomial with exponents in `lo..=hi`; each exponent is
/// kept with probability one half.
pub fn random_laurent<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> LaurentPoly {
    let mut q = LaurentPoly::zero();
    for k in lo..=hi {
        if rng.gen_bool(0.5) {
            q.add_term(k, random_rational(rng));
        }
    }
    q
}
