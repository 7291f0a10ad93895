//! Residue-form extension terms of the extended brackets, evaluated along an
//! observer trajectory `q(z)`.
//!
//! Contour integrals are residues with the `2πi` absorbed. Vector fields and
//! gauge functions may carry negative powers of `x`, so nonzero residues
//! occur on simple trajectories. A negative power of `x^μ` needs `q^μ(z)`
//! to be a single monomial.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{JetError, Result};
use crate::exactpoly::{degree_cap, parse_terms, shift_column, split_components, LaurentPoly, LaurentVec, Poly, Var};
use crate::jetreps::StructureConstants;
use crate::rational::{rat, to_display_string, Rational};

/// Laurent polynomial in the spatial variables `x^0..x^{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentField {
    dim: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl LaurentField {
    pub fn zero(dim: usize) -> Self {
        LaurentField {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(vec![0; dim], c);
        f
    }

    pub fn from_poly(p: &Poly) -> Self {
        let mut f = Self::zero(p.dim());
        for (m, c) in p.terms() {
            f.add_term(m.components().iter().map(|&k| k as i64).collect(), c.clone());
        }
        f
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: Rational) {
        assert_eq!(exps.len(), self.dim, "exponent length differs from dimension");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &LaurentField) -> Result<()> {
        if self.dim != other.dim {
            return Err(JetError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentField) -> Result<LaurentField> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentField) -> Result<LaurentField> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> LaurentField {
        let mut out = Self::zero(self.dim);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentField) -> Result<LaurentField> {
        self.check(other)?;
        let mut out = Self::zero(self.dim);
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                out.add_term(ea.iter().zip(eb).map(|(x, y)| x + y).collect(), a * b);
            }
        }
        Ok(out)
    }

    pub fn derive(&self, mu: usize) -> LaurentField {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let k = e[mu];
            if k != 0 {
                let mut e2 = e.clone();
                e2[mu] -= 1;
                out.add_term(e2, c * rat(k));
            }
        }
        out
    }

    /// `F(q(z))` as a Laurent polynomial in `z`.
    pub fn compose(&self, q: &LaurentVec) -> Result<LaurentPoly> {
        if q.dim() != self.dim {
            return Err(JetError::DimensionMismatch {
                expected: self.dim,
                found: q.dim(),
            });
        }
        let cap = degree_cap();
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let mut t = LaurentPoly::constant(c.clone());
            for (mu, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let factor = q
                    .component(mu)
                    .powi(k)
                    .ok_or(JetError::NonInvertibleTrajectory { component: mu })?;
                factor.check_cap(cap)?;
                t = &t * &factor;
                t.check_cap(cap)?;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Same grammar as polynomials, with negative exponents allowed.
    pub fn parse(src: &str, d: usize) -> Result<LaurentField> {
        let mut out = Self::zero(d);
        for term in parse_terms(src)? {
            let mut exps = vec![0i64; d];
            for pw in &term.powers {
                match pw.var {
                    Var::X(i) if i < d => exps[i] += pw.exponent,
                    Var::X(i) => {
                        return Err(JetError::Parse {
                            column: pw.column,
                            message: format!("variable x{i} out of range for dimension {d}"),
                        })
                    }
                    Var::Z => {
                        return Err(JetError::Parse {
                            column: pw.column,
                            message: "z is not allowed in a spatial field".into(),
                        })
                    }
                }
            }
            out.add_term(exps, term.coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(mu, &k)| if k == 1 { format!("x{mu}") } else { format!("x{mu}^{k}") })
                .collect();
            if i > 0 {
                write!(f, " + ")?;
            }
            let c = to_display_string(c);
            match (vars.is_empty(), c.as_str()) {
                (true, _) => write!(f, "{c}")?,
                (false, "1") => write!(f, "{}", vars.join(" "))?,
                (false, _) => write!(f, "{c}*{}", vars.join(" "))?,
            }
        }
        Ok(())
    }
}

/// Comma-separated components, each a [`LaurentField`] in `d` variables.
pub fn parse_field_vec(src: &str, d: usize) -> Result<Vec<LaurentField>> {
    split_components(src)
        .into_iter()
        .map(|(offset, piece)| LaurentField::parse(piece, d).map_err(|e| shift_column(e, offset)))
        .collect()
}

pub fn field_vec_from_polys(v: &[Poly]) -> Vec<LaurentField> {
    v.iter().map(LaurentField::from_poly).collect()
}

fn check_components(v: &[LaurentField], len: usize, d: usize) -> Result<()> {
    if v.len() != len {
        return Err(JetError::DimensionMismatch {
            expected: len,
            found: v.len(),
        });
    }
    for c in v {
        if c.dim() != d {
            return Err(JetError::DimensionMismatch {
                expected: d,
                found: c.dim(),
            });
        }
    }
    Ok(())
}

fn check_vector(xi: &[LaurentField], q: &LaurentVec) -> Result<usize> {
    let d = q.dim();
    check_components(xi, d, d)?;
    Ok(d)
}

fn check_gauge(x: &[LaurentField], q: &LaurentVec) -> Result<()> {
    for c in x {
        if c.dim() != q.dim() {
            return Err(JetError::DimensionMismatch {
                expected: q.dim(),
                found: c.dim(),
            });
        }
    }
    Ok(())
}

pub fn divergence(xi: &[LaurentField]) -> Result<LaurentField> {
    let d = xi.len();
    check_components(xi, d, d)?;
    let mut out = LaurentField::zero(d);
    for (mu, c) in xi.iter().enumerate() {
        out = out.add(&c.derive(mu))?;
    }
    Ok(out)
}

/// `[ξ, η]^ν = ξ^μ ∂_μ η^ν - η^μ ∂_μ ξ^ν`
pub fn bracket_vect(xi: &[LaurentField], eta: &[LaurentField]) -> Result<Vec<LaurentField>> {
    let d = xi.len();
    check_components(xi, d, d)?;
    check_components(eta, d, d)?;
    (0..d)
        .map(|nu| {
            let mut out = LaurentField::zero(d);
            for mu in 0..d {
                out = out.add(&xi[mu].mul(&eta[nu].derive(mu))?)?;
                out = out.sub(&eta[mu].mul(&xi[nu].derive(mu))?)?;
            }
            Ok(out)
        })
        .collect()
}

/// `[X, Y]^c = f^{abc} X^a Y^b`
pub fn bracket_gauge(x: &[LaurentField], y: &[LaurentField], f: &StructureConstants) -> Result<Vec<LaurentField>> {
    let n = f.dim();
    let d = x.first().or(y.first()).map(LaurentField::dim).unwrap_or(1);
    check_components(x, n, d)?;
    check_components(y, n, d)?;
    let mut out = vec![LaurentField::zero(d); n];
    for a in 0..n {
        for b in 0..n {
            let xy = x[a].mul(&y[b])?;
            for (c, slot) in out.iter_mut().enumerate() {
                let fc = f.get(a, b, c);
                if !fc.is_zero() {
                    *slot = slot.add(&xy.scale(fc))?;
                }
            }
        }
    }
    Ok(out)
}

/// `[f, g] = f ġ - g ḟ`
pub fn bracket_rep(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    &(f * &g.derivative()) - &(g * &f.derivative())
}

/// `ξ X = ξ^μ ∂_μ X + ∂_μ ξ^μ X`
pub fn density_action(xi: &[LaurentField], x: &[LaurentField]) -> Result<Vec<LaurentField>> {
    let d = xi.len();
    let div = divergence(xi)?;
    check_components(x, x.len(), d)?;
    x.iter()
        .map(|xa| {
            let mut out = div.mul(xa)?;
            for (mu, c) in xi.iter().enumerate() {
                out = out.add(&c.mul(&xa.derive(mu))?)?;
            }
            Ok(out)
        })
        .collect()
}

/// `-Res q̇^ρ (c1 ∂_ρ∂_ν ξ^μ(q) ∂_μ η^ν(q) + c2 ∂_ρ∂_μ ξ^μ(q) ∂_ν η^ν(q))`
pub fn virasoro_cocycle(
    xi: &[LaurentField],
    eta: &[LaurentField],
    q: &LaurentVec,
    c1: &Rational,
    c2: &Rational,
) -> Result<Rational> {
    let d = check_vector(xi, q)?;
    check_vector(eta, q)?;
    let qdot = q.derivative();
    let mut integrand = LaurentPoly::zero();
    if !c1.is_zero() {
        for mu in 0..d {
            for nu in 0..d {
                let right = eta[nu].derive(mu).compose(q)?;
                if right.is_zero() {
                    continue;
                }
                let grad = xi[mu].derive(nu);
                for rho in 0..d {
                    let left = grad.derive(rho).compose(q)?;
                    integrand = &integrand + &(&(qdot.component(rho) * &left) * &right).scale(c1);
                }
            }
        }
    }
    if !c2.is_zero() {
        let div_xi = divergence(xi)?;
        let right = divergence(eta)?.compose(q)?;
        for rho in 0..d {
            let left = div_xi.derive(rho).compose(q)?;
            integrand = &integrand + &(&(qdot.component(rho) * &left) * &right).scale(c2);
        }
    }
    Ok(-integrand.residue())
}

/// `Res q̇^ρ (c5 ∂_ρ X^a(q) Y^a(q) + c8 δ^a ∂_ρ X^a(q) δ^b Y^b(q))` with the
/// privileged direction `δ^a` at `a = 0`.
pub fn affine_cocycle(
    x: &[LaurentField],
    y: &[LaurentField],
    q: &LaurentVec,
    c5: &Rational,
    c8: &Rational,
) -> Result<Rational> {
    check_gauge(x, q)?;
    check_gauge(y, q)?;
    if x.len() != y.len() {
        return Err(JetError::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let d = q.dim();
    let qdot = q.derivative();
    let mut integrand = LaurentPoly::zero();
    for (a, (xa, ya)) in x.iter().zip(y).enumerate() {
        let mut weight = c5.clone();
        if a == 0 {
            weight += c8;
        }
        if weight.is_zero() {
            continue;
        }
        let right = ya.compose(q)?;
        for rho in 0..d {
            let left = xa.derive(rho).compose(q)?;
            integrand = &integrand + &(&(qdot.component(rho) * &left) * &right).scale(&weight);
        }
    }
    Ok(integrand.residue())
}

/// `c7 Res q̇^ρ ∂_ρ ∂_μ ξ^μ(q) δ^a X^a(q)`
pub fn mixed_cocycle(xi: &[LaurentField], x: &[LaurentField], q: &LaurentVec, c7: &Rational) -> Result<Rational> {
    let d = check_vector(xi, q)?;
    check_gauge(x, q)?;
    let Some(x0) = x.first() else {
        return Ok(Rational::zero());
    };
    let qdot = q.derivative();
    let div = divergence(xi)?;
    let right = x0.compose(q)?;
    let mut integrand = LaurentPoly::zero();
    for rho in 0..d {
        integrand = &integrand + &(&(qdot.component(rho) * &div.derive(rho).compose(q)?) * &right);
    }
    Ok(c7 * integrand.residue())
}

/// Sign relating [`reparam_tt_cocycle`] on `f = z^{m+1}`, `g = z^{1-m}` to
/// `-(c4/12)(m³ - m)`.
pub const REPARAM_ORIENTATION_SIGN: i64 = -1;

/// `-(c4/12) Res f̈ ġ`
pub fn reparam_tt_cocycle(f: &LaurentPoly, g: &LaurentPoly, c4: &Rational) -> Rational {
    let integrand = &f.derivative().derivative() * &g.derivative();
    -(c4 / rat(12)) * integrand.residue()
}

/// `-(c3/2) Res f̈ ∂_μ ξ^μ(q)`
pub fn reparam_vector_cocycle(f: &LaurentPoly, xi: &[LaurentField], q: &LaurentVec, c3: &Rational) -> Result<Rational> {
    check_vector(xi, q)?;
    let integrand = &f.derivative().derivative() * &divergence(xi)?.compose(q)?;
    Ok(-(c3 / rat(2)) * integrand.residue())
}

/// `-(c6/2) Res f̈ δ^a X^a(q)`
pub fn reparam_gauge_cocycle(f: &LaurentPoly, x: &[LaurentField], q: &LaurentVec, c6: &Rational) -> Result<Rational> {
    check_gauge(x, q)?;
    let Some(x0) = x.first() else {
        return Ok(Rational::zero());
    };
    let integrand = &f.derivative().derivative() * &x0.compose(q)?;
    Ok(-(c6 / rat(2)) * integrand.residue())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocyclePair {
    Virasoro {
        xi: Vec<LaurentField>,
        eta: Vec<LaurentField>,
        c1: Rational,
        c2: Rational,
    },
    Affine {
        x: Vec<LaurentField>,
        y: Vec<LaurentField>,
        c5: Rational,
        c8: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntisymmetryReport {
    pub forward: Rational,
    pub backward: Rational,
}

impl AntisymmetryReport {
    pub fn sum(&self) -> Rational {
        &self.forward + &self.backward
    }

    pub fn passed(&self) -> bool {
        self.sum().is_zero()
    }
}

/// Evaluates the cocycle in both argument orders.
pub fn antisymmetry_check(pair: &CocyclePair, q: &LaurentVec) -> Result<AntisymmetryReport> {
    let (forward, backward) = match pair {
        CocyclePair::Virasoro { xi, eta, c1, c2 } => (
            virasoro_cocycle(xi, eta, q, c1, c2)?,
            virasoro_cocycle(eta, xi, q, c1, c2)?,
        ),
        CocyclePair::Affine { x, y, c5, c8 } => (affine_cocycle(x, y, q, c5, c8)?, affine_cocycle(y, x, q, c5, c8)?),
    };
    Ok(AntisymmetryReport { forward, backward })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::sampling::{random_laurent, random_poly_vec, random_rational};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fv(src: &str, d: usize) -> Vec<LaurentField> {
        parse_field_vec(src, d).unwrap()
    }

    fn traj(src: &str) -> LaurentVec {
        LaurentVec::parse(src).unwrap()
    }

    fn lp(src: &str) -> LaurentPoly {
        LaurentPoly::parse(src).unwrap()
    }

    /// The Virasoro integrand rebuilt through `q̇^ρ ∂_ρ F(q) = d/dz F(q(z))`.
    fn virasoro_oracle(xi: &[LaurentField], eta: &[LaurentField], q: &LaurentVec, c1: &Rational, c2: &Rational) -> Rational {
        let d = q.dim();
        let mut integrand = LaurentPoly::zero();
        for mu in 0..d {
            for nu in 0..d {
                let left = xi[mu].derive(nu).compose(q).unwrap().derivative();
                let right = eta[nu].derive(mu).compose(q).unwrap();
                integrand = &integrand + &(&left * &right).scale(c1);
            }
        }
        let left = divergence(xi).unwrap().compose(q).unwrap().derivative();
        let right = divergence(eta).unwrap().compose(q).unwrap();
        integrand = &integrand + &(&left * &right).scale(c2);
        -integrand.residue()
    }

    #[test]
    fn bracket_examples() {
        let out = bracket_vect(&fv("x^2", 1), &fv("x", 1)).unwrap();
        assert_eq!(out, fv("-x^2", 1));
        assert_eq!(bracket_rep(&lp("z"), &lp("z^2")), lp("z^2"));
        let xi = fv("3, -1", 2);
        assert!(density_action(&xi, &fv("5", 2)).unwrap().iter().all(LaurentField::is_zero));
        let so3 = StructureConstants::so3();
        let g = bracket_gauge(&fv("x, 0, 0", 1), &fv("0, x^-1, 0", 1), &so3).unwrap();
        assert_eq!(g[2], LaurentField::constant(1, rat(1)));
    }

    #[test]
    fn brackets_agree_with_polynomial_versions() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let xi = random_poly_vec(&mut rng, 2, 2, 2);
            let eta = random_poly_vec(&mut rng, 2, 2, 2);
            let poly = crate::jetreps::lie_bracket(&xi, &eta).unwrap();
            let laurent = bracket_vect(&field_vec_from_polys(&xi), &field_vec_from_polys(&eta)).unwrap();
            assert_eq!(laurent, field_vec_from_polys(&poly));
            let dens = crate::jetreps::density_action(&xi, &eta).unwrap();
            assert_eq!(
                density_action(&field_vec_from_polys(&xi), &field_vec_from_polys(&eta)).unwrap(),
                field_vec_from_polys(&dens)
            );
        }
    }

    #[test]
    fn parse_and_display() {
        let f = LaurentField::parse("2 x0^-1 x1 + 1/2", 2).unwrap();
        assert_eq!(LaurentField::parse(&f.to_string(), 2).unwrap(), f);
        assert!(LaurentField::parse("z", 1).is_err());
        assert!(matches!(parse_field_vec("x, x3", 2), Err(JetError::Parse { column: 4, .. })));
    }

    #[test]
    fn compose_needs_monomial_for_negative_powers() {
        let f = LaurentField::parse("x^-2", 1).unwrap();
        assert_eq!(f.compose(&traj("3 z")).unwrap(), LaurentPoly::monomial(frac(1, 9), -2));
        assert_eq!(
            f.compose(&traj("1 + z")),
            Err(JetError::NonInvertibleTrajectory { component: 0 })
        );
    }

    #[test]
    fn constant_trajectory_or_field_gives_zero() {
        let q = traj("5");
        let one = rat(1);
        assert!(virasoro_cocycle(&fv("x^3", 1), &fv("x^-1", 1), &q, &one, &one).unwrap().is_zero());
        assert!(affine_cocycle(&fv("x^2", 1), &fv("x^-3", 1), &q, &one, &one).unwrap().is_zero());
        assert!(mixed_cocycle(&fv("x^3", 1), &fv("x^-2", 1), &q, &one).unwrap().is_zero());
        let q = traj("z^-1");
        assert!(virasoro_cocycle(&fv("7", 1), &fv("x^3", 1), &q, &one, &one).unwrap().is_zero());
    }

    #[test]
    fn virasoro_example_matches_oracle() {
        let (xi, eta, q) = (fv("x^2", 1), fv("x", 1), traj("z^-1"));
        let v = virasoro_cocycle(&xi, &eta, &q, &rat(1), &rat(1)).unwrap();
        assert_eq!(v, virasoro_oracle(&xi, &eta, &q, &rat(1), &rat(1)));
        assert_eq!(v, rat(0));
        // ξ = x³, η = x^-1 along q = z: -Res[2·6z·(-z^-2)] = 12
        let v = virasoro_cocycle(&fv("x^3", 1), &fv("x^-1", 1), &traj("z"), &rat(1), &rat(1)).unwrap();
        assert_eq!(v, rat(12));
    }

    #[test]
    fn virasoro_matches_oracle_on_random_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let d = rng.gen_range(1..=2);
            let xi = field_vec_from_polys(&random_poly_vec(&mut rng, d, d, 3));
            let eta = field_vec_from_polys(&random_poly_vec(&mut rng, d, d, 3));
            let q = LaurentVec::new((0..d).map(|_| random_laurent(&mut rng, -2, 2)).collect());
            let (c1, c2) = (random_rational(&mut rng), random_rational(&mut rng));
            assert_eq!(
                virasoro_cocycle(&xi, &eta, &q, &c1, &c2).unwrap(),
                virasoro_oracle(&xi, &eta, &q, &c1, &c2)
            );
        }
    }

    #[test]
    fn affine_examples() {
        let k = frac(7, 3);
        let (q, zero) = (traj("z"), rat(0));
        assert_eq!(affine_cocycle(&fv("x", 1), &fv("x", 1), &q, &k, &zero).unwrap(), rat(0));
        assert_eq!(affine_cocycle(&fv("x", 1), &fv("x^-1", 1), &q, &k, &zero).unwrap(), k);
        // c8 only sees the privileged component
        let two = fv("x, x", 1);
        let inv = fv("x^-1, x^-1", 1);
        assert_eq!(affine_cocycle(&two, &inv, &q, &rat(1), &rat(5)).unwrap(), rat(7));
    }

    #[test]
    fn reparam_examples() {
        let c4 = rat(12);
        assert_eq!(reparam_tt_cocycle(&lp("z"), &lp("z"), &c4), rat(0));
        assert_eq!(reparam_tt_cocycle(&lp("z^2"), &lp("z^-1"), &c4), rat(0));
        // hand computation at m = 2: f̈ ġ = 6z · (-z^-2), residue -6
        assert_eq!(reparam_tt_cocycle(&lp("z^3"), &lp("z^-1"), &c4), rat(6));
        for m in -4i64..=4 {
            let f = LaurentPoly::monomial(rat(1), m + 1);
            let g = LaurentPoly::monomial(rat(1), 1 - m);
            let expected = rat(REPARAM_ORIENTATION_SIGN) * -(&c4 / rat(12)) * rat(m * m * m - m);
            assert_eq!(reparam_tt_cocycle(&f, &g, &c4), expected, "m={m}");
        }
    }

    #[test]
    fn reparam_mixed_examples() {
        let q = traj("z");
        // ∂·ξ vanishes for constant ξ
        assert_eq!(reparam_vector_cocycle(&lp("z^2"), &fv("1", 1), &q, &rat(1)).unwrap(), rat(0));
        // ∂·ξ = x^-2 and f̈ = 6z give residue 6
        assert_eq!(reparam_vector_cocycle(&lp("z^3"), &fv("-x^-1", 1), &q, &rat(2)).unwrap(), rat(-6));
        assert_eq!(reparam_gauge_cocycle(&lp("z^2"), &fv("x^-1, 5", 1), &q, &rat(4)).unwrap(), rat(-4));
        assert_eq!(mixed_cocycle(&fv("x^2", 1), &fv("x^-1", 1), &traj("z^2"), &rat(3)).unwrap(), rat(12));
        assert_eq!(mixed_cocycle(&fv("x^3", 1), &fv("x^-2", 1), &q, &rat(1)).unwrap(), rat(6));
    }

    #[test]
    fn antisymmetry_on_random_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let d = rng.gen_range(1..=2);
            let q = LaurentVec::new((0..d).map(|_| random_laurent(&mut rng, -1, 1)).collect());
            let pair = CocyclePair::Virasoro {
                xi: field_vec_from_polys(&random_poly_vec(&mut rng, d, d, 2)),
                eta: field_vec_from_polys(&random_poly_vec(&mut rng, d, d, 2)),
                c1: random_rational(&mut rng),
                c2: random_rational(&mut rng),
            };
            assert!(antisymmetry_check(&pair, &q).unwrap().passed());
            let pair = CocyclePair::Affine {
                x: field_vec_from_polys(&random_poly_vec(&mut rng, d, 2, 2)),
                y: field_vec_from_polys(&random_poly_vec(&mut rng, d, 2, 2)),
                c5: random_rational(&mut rng),
                c8: random_rational(&mut rng),
            };
            assert!(antisymmetry_check(&pair, &q).unwrap().passed());
        }
    }

    #[test]
    fn bilinear_in_the_fields() {
        let q = traj("z + 2 z^-1, 3 z^2");
        let xi = fv("x0^2 x1, x1^2", 2);
        let xi2 = fv("x0 x1, x0^3", 2);
        let eta = fv("x1^3, x0 x1", 2);
        let (c1, c2) = (frac(1, 2), rat(-3));
        let sum: Vec<_> = xi.iter().zip(&xi2).map(|(a, b)| a.add(&b.scale(&rat(3))).unwrap()).collect();
        let lhs = virasoro_cocycle(&sum, &eta, &q, &c1, &c2).unwrap();
        let rhs = virasoro_cocycle(&xi, &eta, &q, &c1, &c2).unwrap()
            + rat(3) * virasoro_cocycle(&xi2, &eta, &q, &c1, &c2).unwrap();
        assert_eq!(lhs, rhs);
    }

    use rand::Rng;
}
