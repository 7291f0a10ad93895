use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::{LaurentPoly, LaurentVec};
use super::parse::{parse_terms, Var};
use super::degree_cap;
use crate::error::{JetError, Result};
use crate::multiindex::MultiIndex;
use crate::rational::{from_big, to_display_string, Rational};

/// Sparse polynomial in `d` commuting variables with exact coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Poly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::monomial(MultiIndex::zero(dim), c)
    }

    /// The coordinate function `x_mu`.
    pub fn var(dim: usize, mu: usize) -> Self {
        Self::monomial(MultiIndex::unit(dim, mu), Rational::one())
    }

    pub fn monomial(exponent: MultiIndex, c: Rational) -> Self {
        let mut p = Poly::zero(exponent.dim());
        p.add_term(exponent, c);
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Result<Self> {
        let mut p = Poly::zero(dim);
        for (m, c) in terms {
            if m.dim() != dim {
                return Err(JetError::DimensionMismatch {
                    expected: dim,
                    found: m.dim(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Accumulates `c x^m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: MultiIndex, c: Rational) {
        debug_assert_eq!(m.dim(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::order).max()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&MultiIndex::zero(self.dim))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn check_dim(&self, other: &Poly) -> Result<()> {
        if self.dim != other.dim {
            return Err(JetError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn multiply(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = Poly::zero(self.dim);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.add(n).expect("same dim"), a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.dim);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every term with `|m| > p`.
    pub fn truncate(&self, p: u32) -> Poly {
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.order() <= p)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `∂_mu`. Panics if `mu` is out of range.
    pub fn derive(&self, mu: usize) -> Poly {
        assert!(mu < self.dim, "direction {mu} out of range for dimension {}", self.dim);
        let mut out = Poly::zero(self.dim);
        for (m, c) in &self.terms {
            if let Some(lower) = m.with_decremented(mu) {
                out.add_term(lower, c * Rational::from_integer(m.get(mu).into()));
            }
        }
        out
    }

    /// `∂_m` for a multi-index `m`.
    pub fn derive_multi(&self, m: &MultiIndex) -> Poly {
        let mut out = self.clone();
        for (mu, &k) in m.components().iter().enumerate() {
            for _ in 0..k {
                out = out.derive(mu);
            }
        }
        out
    }

    /// `∂_m a(0) = m! · coef_m(a)`.
    pub fn eval_at_zero_deriv(&self, m: &MultiIndex) -> Rational {
        self.coeff(m) * from_big(m.factorial())
    }

    /// `a(x) - a(0)`.
    pub fn shift_to_zero(&self) -> Poly {
        let mut out = self.clone();
        out.terms.remove(&MultiIndex::zero(self.dim));
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.dim {
            return Err(JetError::DimensionMismatch {
                expected: self.dim,
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(m.components()) {
                for _ in 0..k {
                    t *= x;
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Replaces `x_i` by `images[i]`; all images must share one dimension.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.dim {
            return Err(JetError::DimensionMismatch {
                expected: self.dim,
                found: images.len(),
            });
        }
        let target = images.first().map(Poly::dim).unwrap_or(0);
        for im in images {
            if im.dim != target {
                return Err(JetError::DimensionMismatch {
                    expected: target,
                    found: im.dim,
                });
            }
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (im, &k) in images.iter().zip(m.components()) {
                t = &t * &im.pow(k);
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Reinterprets the variables as `x_{offset}, ..., x_{offset+d-1}` of a
    /// larger space.
    pub fn embed(&self, new_dim: usize, offset: usize) -> Poly {
        assert!(offset + self.dim <= new_dim);
        let mut out = Poly::zero(new_dim);
        for (m, c) in &self.terms {
            let mut comps = vec![0; new_dim];
            comps[offset..offset + self.dim].copy_from_slice(m.components());
            out.add_term(MultiIndex::new(comps), c.clone());
        }
        out
    }

    /// `x^mu -> q^mu(z)` along a Laurent trajectory, under the default
    /// degree cap.
    pub fn compose_with_trajectory(&self, q: &LaurentVec) -> Result<LaurentPoly> {
        self.compose_with_trajectory_capped(q, degree_cap())
    }

    pub fn compose_with_trajectory_capped(&self, q: &LaurentVec, cap: u32) -> Result<LaurentPoly> {
        if q.dim() != self.dim {
            return Err(JetError::DimensionMismatch {
                expected: self.dim,
                found: q.dim(),
            });
        }
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut t = LaurentPoly::constant(c.clone());
            for (mu, &k) in m.components().iter().enumerate() {
                for _ in 0..k {
                    t = &t * q.component(mu);
                    t.check_cap(cap)?;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Parses the literal grammar in `d` variables. Only `x`, `x0`..`x{d-1}`
    /// with non-negative exponents are accepted.
    pub fn parse(src: &str, d: usize) -> Result<Poly> {
        let mut out = Poly::zero(d);
        for term in parse_terms(src)? {
            let mut exps = vec![0u32; d];
            for pw in &term.powers {
                let mu = match pw.var {
                    Var::X(i) if i < d => i,
                    Var::X(i) => {
                        return Err(JetError::Parse {
                            column: pw.column,
                            message: format!("variable x{i} out of range for dimension {d}"),
                        })
                    }
                    Var::Z => {
                        return Err(JetError::Parse {
                            column: pw.column,
                            message: "z is not allowed in a spatial polynomial".into(),
                        })
                    }
                };
                if pw.exponent < 0 {
                    return Err(JetError::Parse {
                        column: pw.column,
                        message: "negative exponent in a polynomial".into(),
                    });
                }
                exps[mu] += pw.exponent as u32;
            }
            out.add_term(MultiIndex::new(exps), term.coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let text = to_display_string(c);
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut vars = Vec::new();
            for (mu, &k) in m.components().iter().enumerate() {
                match k {
                    0 => {}
                    1 => vars.push(format!("x{mu}")),
                    _ => vars.push(format!("x{mu}^{k}")),
                }
            }
            if vars.is_empty() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{}", vars.join(" "))?;
            } else {
                write!(f, "{body}*{}", vars.join(" "))?;
            }
        }
        Ok(())
    }
}

// Operator forms assume equal dimensions; mismatches are programming errors
// here, whereas the fallible entry points return `DimensionMismatch`.

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial dimensions differ")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.multiply(rhs).expect("polynomial dimensions differ")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

/// A vector of polynomials of a common dimension; used for vector fields
/// `xi^mu(x)` and gauge functions `X^a(x)`.
pub type PolyVec = Vec<Poly>;

/// Parses comma-separated components, each in `d` variables.
pub fn parse_poly_vec(src: &str, d: usize) -> Result<PolyVec> {
    super::parse::split_components(src)
        .into_iter()
        .map(|(offset, piece)| {
            Poly::parse(piece, d).map_err(|e| super::parse::shift_column(e, offset))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn mi(c: &[u32]) -> MultiIndex {
        MultiIndex::new(c.to_vec())
    }

    #[test]
    fn multiply_examples() {
        let x0 = Poly::var(2, 0);
        let x1 = Poly::var(2, 1);
        let prod = x0.multiply(&x1).unwrap();
        assert_eq!(prod.len(), 1);
        assert_eq!(prod.coeff(&mi(&[1, 1])), rat(1));

        let a = Poly::parse("1 + x", 1).unwrap();
        let b = Poly::parse("1 - x", 1).unwrap();
        assert_eq!(a.multiply(&b).unwrap(), Poly::parse("1 - x^2", 1).unwrap());

        assert!(Poly::zero(1).multiply(&a).unwrap().is_zero());
        assert!(matches!(
            x0.multiply(&a),
            Err(JetError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn truncate_examples() {
        let a = Poly::parse("1 + x + x^2", 1).unwrap();
        assert_eq!(a.truncate(1), Poly::parse("1 + x", 1).unwrap());
        assert_eq!(a.truncate(2), a);
        assert_eq!(a.truncate(1).truncate(1), a.truncate(1));
    }

    #[test]
    fn derive_examples() {
        let a = Poly::parse("x0^2 x1", 2).unwrap();
        assert_eq!(a.derive(0), Poly::parse("2 x0 x1", 2).unwrap());
        assert!(Poly::var(2, 0).derive(1).is_zero());
    }

    #[test]
    fn eval_at_zero_deriv_examples() {
        assert_eq!(Poly::parse("x^2", 1).unwrap().eval_at_zero_deriv(&mi(&[2])), rat(2));
        assert_eq!(Poly::parse("7", 1).unwrap().eval_at_zero_deriv(&mi(&[0])), rat(7));
        assert_eq!(
            Poly::parse("x0 x1", 2).unwrap().eval_at_zero_deriv(&mi(&[1, 1])),
            rat(1)
        );
    }

    #[test]
    fn shift_examples() {
        assert_eq!(
            Poly::parse("3 + x", 1).unwrap().shift_to_zero(),
            Poly::var(1, 0)
        );
        let sq = Poly::parse("x^2", 1).unwrap();
        assert_eq!(sq.shift_to_zero(), sq);
    }

    #[test]
    fn compose_examples() {
        let q = LaurentVec::parse("z + z^-1").unwrap();
        assert_eq!(
            Poly::var(1, 0).compose_with_trajectory(&q).unwrap(),
            LaurentPoly::parse("z + z^-1").unwrap()
        );
        let q = LaurentVec::parse("z^-1").unwrap();
        assert_eq!(
            Poly::parse("x^2", 1).unwrap().compose_with_trajectory(&q).unwrap(),
            LaurentPoly::parse("z^-2").unwrap()
        );
        assert_eq!(
            Poly::one(1).compose_with_trajectory(&q).unwrap(),
            LaurentPoly::constant(rat(1))
        );
    }

    #[test]
    fn compose_respects_cap() {
        let q = LaurentVec::parse("z^10").unwrap();
        let a = Poly::parse("x^7", 1).unwrap();
        assert!(matches!(
            a.compose_with_trajectory_capped(&q, 64),
            Err(JetError::DegreeCap { degree: 70, cap: 64 })
        ));
        assert!(a.compose_with_trajectory_capped(&q, 70).is_ok());
    }

    #[test]
    fn substitute_translates() {
        // (x)^2 with x -> x + q in two variables
        let a = Poly::parse("x^2", 1).unwrap();
        let image = &Poly::var(2, 0) + &Poly::var(2, 1);
        let out = a.substitute(&[image]).unwrap();
        assert_eq!(out, Poly::parse("x0^2 + 2 x0 x1 + x1^2", 2).unwrap());
    }

    #[test]
    fn parse_rejects_bad_variables() {
        assert!(matches!(
            Poly::parse("x2", 2),
            Err(JetError::Parse { column: 1, .. })
        ));
        assert!(Poly::parse("x^-1", 1).is_err());
        assert!(Poly::parse("z", 1).is_err());
        assert_eq!(Poly::parse("1/2 x + 1/2 x", 1).unwrap(), Poly::var(1, 0));
        let v = parse_poly_vec("x1, 3/4 x0^2", 2).unwrap();
        assert_eq!(v[1].coeff(&mi(&[2, 0])), frac(3, 4));
        match parse_poly_vec("x0, x9", 2) {
            Err(JetError::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn display_round_trips() {
        let a = Poly::parse("-3/2 x0^2 x1 + x1 - 4", 2).unwrap();
        assert_eq!(Poly::parse(&a.to_string(), 2).unwrap(), a);
        assert_eq!(Poly::zero(3).to_string(), "0");
    }

    mod props {
        use super::*;
        use crate::sampling::random_poly;
        use proptest::prelude::*;
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;

        proptest! {
            #[test]
            fn truncation_commutes_with_products(seed in any::<u64>(), d in 1usize..=3, p in 0u32..=4) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let a = random_poly(&mut rng, d, 2 * p);
                let b = random_poly(&mut rng, d, 2 * p);
                let lhs = (&a.truncate(p) * &b.truncate(p)).truncate(p);
                let rhs = (&a * &b).truncate(p);
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn mixed_partials_commute(seed in any::<u64>(), d in 2usize..=3) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let f = random_poly(&mut rng, d, 4);
                prop_assert_eq!(f.derive(0).derive(1), f.derive(1).derive(0));
            }

            #[test]
            fn operations_commute_with_integer_scaling(seed in any::<u64>(), k in -5i64..=5, p in 0u32..=3) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let a = random_poly(&mut rng, 2, 4);
                let b = random_poly(&mut rng, 2, 4);
                let k = rat(k);
                prop_assert_eq!(&a.scale(&k) * &b, (&a * &b).scale(&k));
                prop_assert_eq!(a.scale(&k).derive(1), a.derive(1).scale(&k));
                prop_assert_eq!(a.scale(&k).truncate(p), a.truncate(p).scale(&k));
            }

            #[test]
            fn shift_is_idempotent(seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let a = random_poly(&mut rng, 2, 3);
                let s = a.shift_to_zero();
                prop_assert!(s.constant_term().is_zero());
                prop_assert_eq!(s.shift_to_zero(), s.clone());
                prop_assert_eq!(s.derive(0), a.derive(0));
            }
        }
    }
}
