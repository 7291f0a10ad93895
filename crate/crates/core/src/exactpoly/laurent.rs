use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::parse::{parse_terms, shift_column, split_components, Var};
use crate::error::{JetError, Result};
use crate::rational::{to_display_string, Rational};

/// Finite Laurent polynomial in the contour variable `z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `z^-1`; the contour integral with `1/2πi` absorbed.
    pub fn residue(&self) -> Rational {
        self.coeff(-1)
    }

    /// `d/dz`
    pub fn derivative(&self) -> LaurentPoly {
        let mut out = Self::zero();
        for (&k, c) in &self.terms {
            out.add_term(k - 1, c * Rational::from_integer(k.into()));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        let mut out = Self::zero();
        for (&k, v) in &self.terms {
            out.add_term(k, v * c);
        }
        out
    }

    /// Largest `|k|` among stored exponents.
    pub fn max_abs_degree(&self) -> i64 {
        self.terms.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    pub fn check_cap(&self, cap: u32) -> Result<()> {
        let worst = self.max_abs_degree();
        if worst > cap as i64 {
            return Err(JetError::DegreeCap { degree: worst, cap });
        }
        Ok(())
    }

    /// `Some((c, k))` when this is the single term `c z^k`.
    pub fn as_monomial(&self) -> Option<(Rational, i64)> {
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().expect("one term");
            Some((c.clone(), *k))
        } else {
            None
        }
    }

    /// Integer power; negative powers exist only for monomials.
    pub fn powi(&self, e: i64) -> Option<LaurentPoly> {
        if e >= 0 {
            let mut acc = Self::constant(Rational::one());
            for _ in 0..e {
                acc = &acc * self;
            }
            return Some(acc);
        }
        let (c, k) = self.as_monomial()?;
        let inv = Self::monomial(c.recip(), -k);
        inv.powi(-e)
    }

    pub fn parse(src: &str) -> Result<LaurentPoly> {
        let mut out = Self::zero();
        for term in parse_terms(src)? {
            let mut k = 0i64;
            for pw in &term.powers {
                if pw.var != Var::Z {
                    return Err(JetError::Parse {
                        column: pw.column,
                        message: "only z is allowed in a Laurent polynomial".into(),
                    });
                }
                k += pw.exponent;
            }
            out.add_term(k, term.coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.terms.iter().enumerate() {
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
            match (k, body.as_str()) {
                (0, _) => write!(f, "{body}")?,
                (1, "1") => write!(f, "z")?,
                (1, _) => write!(f, "{body}*z")?,
                (_, "1") => write!(f, "z^{k}")?,
                _ => write!(f, "{body}*z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

/// A Laurent polynomial with `d`-vector coefficients, stored per component.
/// Trajectories `q^mu(z)` live here.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentVec {
    components: Vec<LaurentPoly>,
}

impl LaurentVec {
    pub fn new(components: Vec<LaurentPoly>) -> Self {
        LaurentVec { components }
    }

    pub fn zero(d: usize) -> Self {
        LaurentVec {
            components: vec![LaurentPoly::zero(); d],
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, mu: usize) -> &LaurentPoly {
        &self.components[mu]
    }

    pub fn components(&self) -> &[LaurentPoly] {
        &self.components
    }

    pub fn derivative(&self) -> LaurentVec {
        LaurentVec {
            components: self.components.iter().map(LaurentPoly::derivative).collect(),
        }
    }

    pub fn residue(&self) -> Vec<Rational> {
        self.components.iter().map(LaurentPoly::residue).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(LaurentPoly::is_zero)
    }

    /// Comma-separated components, one per spatial direction.
    pub fn parse(src: &str) -> Result<LaurentVec> {
        let components = split_components(src)
            .into_iter()
            .map(|(offset, piece)| LaurentPoly::parse(piece).map_err(|e| shift_column(e, offset)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentVec { components })
    }
}

impl fmt::Display for LaurentVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    #[test]
    fn residue_examples() {
        assert_eq!(LaurentPoly::parse("z^-1").unwrap().residue(), rat(1));
        assert_eq!(LaurentPoly::parse("5 + 3z").unwrap().residue(), rat(0));
        assert_eq!(LaurentPoly::parse("2 z^-1 + z^-2").unwrap().residue(), rat(2));
    }

    #[test]
    fn derivative_of_inverse() {
        let l = LaurentPoly::parse("z^-1").unwrap();
        assert_eq!(l.derivative(), LaurentPoly::parse("-z^-2").unwrap());
        assert!(LaurentPoly::parse("4").unwrap().derivative().is_zero());
    }

    #[test]
    fn negative_powers_need_monomials() {
        let m = LaurentPoly::parse("2 z^3").unwrap();
        assert_eq!(m.powi(-2).unwrap(), LaurentPoly::monomial(frac(1, 4), -6));
        assert!(LaurentPoly::parse("z + 1").unwrap().powi(-1).is_none());
        assert_eq!(
            LaurentPoly::parse("z + 1").unwrap().powi(2).unwrap(),
            LaurentPoly::parse("z^2 + 2 z + 1").unwrap()
        );
    }

    #[test]
    fn vector_parse_and_display() {
        let q = LaurentVec::parse("z + z^-1, 0, -1/2 z^2").unwrap();
        assert_eq!(q.dim(), 3);
        assert!(q.component(1).is_zero());
        assert_eq!(LaurentVec::parse(&q.to_string()).unwrap(), q);
        match LaurentVec::parse("z, x") {
            Err(JetError::Parse { column, .. }) => assert_eq!(column, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn laurent() -> impl Strategy<Value = LaurentPoly> {
            proptest::collection::vec((-6i64..=6, -9i64..=9, 1i64..=4), 0..6).prop_map(|ts| {
                let mut l = LaurentPoly::zero();
                for (k, n, d) in ts {
                    l.add_term(k, frac(n, d));
                }
                l
            })
        }

        proptest! {
            #[test]
            fn total_derivatives_have_no_residue(l in laurent()) {
                prop_assert!(l.derivative().residue().is_zero());
            }

            #[test]
            fn product_rule(a in laurent(), b in laurent()) {
                let lhs = (&a * &b).derivative();
                let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
