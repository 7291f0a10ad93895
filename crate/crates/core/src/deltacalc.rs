//! The p-jet delta function
//!
//! ```text
//! δ_p(x,y) = Σ_{|m|<=p} (-1)^{|m|}/m! x^m ∂_m δ(y)
//! ```
//!
//! Distributions never exist as values here. Every integral is expanded into
//! the finite sum above and each `∂_k δ` is paired with a polynomial through
//! `∫ P(y) ∂_k δ(y) dy = (-1)^{|k|} k! coef_k(P)`.

use num_traits::{One, Zero};

use crate::error::{JetError, Result};
use crate::exactpoly::Poly;
use crate::jetsums::closed_value;
use crate::multiindex::{enumerate, MultiIndex};
use crate::rational::{from_big, Rational};

/// Derivative decoration on one delta factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivSpec {
    None,
    OnX(usize),
    OnY(usize),
}

impl DerivSpec {
    fn direction(&self) -> Option<usize> {
        match *self {
            DerivSpec::None => None,
            DerivSpec::OnX(mu) | DerivSpec::OnY(mu) => Some(mu),
        }
    }

    fn validate(&self, d: usize) -> Result<()> {
        match self.direction() {
            Some(direction) if direction >= d => Err(JetError::InvalidDirection { direction, dim: d }),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SmearMode {
    #[default]
    Plain,
    /// Smear with `f(x) - f(0)` instead of `f(x)`.
    Shifted,
}

impl SmearMode {
    pub fn apply(&self, f: &Poly) -> Poly {
        match self {
            SmearMode::Plain => f.clone(),
            SmearMode::Shifted => f.shift_to_zero(),
        }
    }
}

fn check_poly(f: &Poly, d: usize) -> Result<()> {
    if d == 0 {
        return Err(JetError::ZeroDimension);
    }
    if f.dim() != d {
        return Err(JetError::DimensionMismatch {
            expected: d,
            found: f.dim(),
        });
    }
    Ok(())
}

/// `(-1)^{|m|} / m!`
fn delta_weight(m: &MultiIndex) -> Rational {
    let w = Rational::one() / from_big(m.factorial());
    if m.order() % 2 == 0 {
        w
    } else {
        -w
    }
}

/// `∫ P(y) y^shift ∂_k δ(y) dy` for polynomial `P`.
fn pair(p: &Poly, shift: &MultiIndex, k: &MultiIndex) -> Rational {
    let Ok(rest) = k.sub(shift) else {
        return Rational::zero();
    };
    let c = p.coeff(&rest);
    if c.is_zero() {
        return c;
    }
    let v = c * from_big(k.factorial());
    if k.order() % 2 == 0 {
        v
    } else {
        -v
    }
}

/// One term of `D δ_p(u,v)` after applying the decoration: a coefficient,
/// the monomial exponent in the first variable `u`, and the delta index in
/// the second variable `v`.
struct DeltaTerm {
    coeff: Rational,
    monomial: MultiIndex,
    delta_index: MultiIndex,
}

/// Expands `D δ_p(u,v)` where `OnFirst` differentiates the polynomial part
/// and `OnSecond` raises the delta index.
fn expand(d: usize, p: u32, on_first: Option<usize>, on_second: Option<usize>) -> Result<Vec<DeltaTerm>> {
    let mut out = Vec::new();
    for m in enumerate(d, p)? {
        let mut coeff = delta_weight(&m);
        let mut monomial = m.clone();
        let mut delta_index = m.clone();
        if let Some(mu) = on_first {
            let k = m.get(mu);
            if k == 0 {
                continue;
            }
            coeff *= Rational::from_integer(k.into());
            monomial = m.with_decremented(mu).expect("k > 0");
        }
        if let Some(mu) = on_second {
            delta_index = delta_index.with_incremented(mu);
        }
        out.push(DeltaTerm {
            coeff,
            monomial,
            delta_index,
        });
    }
    Ok(out)
}

/// `∫ f(y) [D δ_p(x,y)] dy` as a polynomial in `x`.
pub fn smear(f: &Poly, deriv: DerivSpec, d: usize, p: u32) -> Result<Poly> {
    check_poly(f, d)?;
    deriv.validate(d)?;
    let (on_x, on_y) = match deriv {
        DerivSpec::None => (None, None),
        DerivSpec::OnX(mu) => (Some(mu), None),
        DerivSpec::OnY(mu) => (None, Some(mu)),
    };
    let mut out = Poly::zero(d);
    let zero = MultiIndex::zero(d);
    for t in expand(d, p, on_x, on_y)? {
        let v = pair(f, &zero, &t.delta_index);
        out.add_term(t.monomial, t.coeff * v);
    }
    Ok(out)
}

/// `∬ f(x) g(y) [D1 δ_p(x,y)] [D2 δ_p(y,x)] dx dy` by direct expansion.
///
/// `modes.0` applies to `f`, `modes.1` to `g`.
pub fn delta_pair_integral(
    f: &Poly,
    g: &Poly,
    d1: DerivSpec,
    d2: DerivSpec,
    modes: (SmearMode, SmearMode),
    d: usize,
    p: u32,
) -> Result<Rational> {
    check_poly(f, d)?;
    check_poly(g, d)?;
    d1.validate(d)?;
    d2.validate(d)?;
    let f = modes.0.apply(f);
    let g = modes.1.apply(g);
    if f.is_zero() || g.is_zero() {
        return Ok(Rational::zero());
    }
    // First factor δ_p(x,y): polynomial in x, delta in y.
    let first = match d1 {
        DerivSpec::None => expand(d, p, None, None)?,
        DerivSpec::OnX(mu) => expand(d, p, Some(mu), None)?,
        DerivSpec::OnY(mu) => expand(d, p, None, Some(mu))?,
    };
    // Second factor δ_p(y,x): polynomial in y, delta in x.
    let second = match d2 {
        DerivSpec::None => expand(d, p, None, None)?,
        DerivSpec::OnY(mu) => expand(d, p, Some(mu), None)?,
        DerivSpec::OnX(mu) => expand(d, p, None, Some(mu))?,
    };
    let mut total = Rational::zero();
    for a in &first {
        for b in &second {
            // x integral: f(x) x^{a.monomial} ∂_{b.delta_index} δ(x)
            let vx = pair(&f, &a.monomial, &b.delta_index);
            if vx.is_zero() {
                continue;
            }
            // y integral: g(y) y^{b.monomial} ∂_{a.delta_index} δ(y)
            let vy = pair(&g, &b.monomial, &a.delta_index);
            if vy.is_zero() {
                continue;
            }
            total += &a.coeff * &b.coeff * vx * vy;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedCase {
    /// `δ_p(x,y) δ_p(y,x)`
    I,
    /// `∂^x_μ δ_p(x,y) δ_p(y,x)`, `f` shifted
    II,
    /// `∂^x_μ δ_p(x,y) ∂^y_ν δ_p(y,x)`, both shifted
    III,
}

impl ClosedCase {
    /// Decorations and smearing modes under which the oracle reproduces this
    /// case.
    pub fn oracle_setup(&self, mu: usize, nu: usize) -> (DerivSpec, DerivSpec, (SmearMode, SmearMode)) {
        match self {
            ClosedCase::I => (DerivSpec::None, DerivSpec::None, (SmearMode::Plain, SmearMode::Plain)),
            ClosedCase::II => (DerivSpec::OnX(mu), DerivSpec::None, (SmearMode::Shifted, SmearMode::Plain)),
            ClosedCase::III => (
                DerivSpec::OnX(mu),
                DerivSpec::OnY(nu),
                (SmearMode::Shifted, SmearMode::Shifted),
            ),
        }
    }
}

/// Closed-form right-hand sides. Case III uses the covariant form, valid
/// for `mu == nu` as well.
pub fn delta_pair_closed(case: ClosedCase, f: &Poly, g: &Poly, mu: usize, nu: usize, d: usize, p: u32) -> Result<Rational> {
    check_poly(f, d)?;
    check_poly(g, d)?;
    for direction in [mu, nu] {
        if direction >= d {
            return Err(JetError::InvalidDirection { direction, dim: d });
        }
    }
    let at0 = |h: &Poly, dirs: &[usize]| {
        let mut m = MultiIndex::zero(d);
        for &k in dirs {
            m = m.with_incremented(k);
        }
        h.eval_at_zero_deriv(&m)
    };
    let s = |tag| from_big(closed_value(tag, d, p));
    Ok(match case {
        ClosedCase::I => s('A') * at0(f, &[]) * at0(g, &[]),
        ClosedCase::II => s('B') * at0(f, &[mu]) * at0(g, &[]),
        ClosedCase::III => {
            s('E') * at0(f, &[nu]) * at0(g, &[mu]) + s('D') * at0(f, &[mu]) * at0(g, &[nu])
        }
    })
}
