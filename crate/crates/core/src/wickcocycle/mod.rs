//! Double Wick contractions of normal-ordered bilinears on the jet space.
//!
//! Every generator is a sum of terms `∫ c(x) :π(x) I φ(x):` with dotted or
//! differentiated fields. Contracting two such bilinears produces
//! `δ_p(x,y) δ_p(y,x)` with derivative decorations. The resulting double
//! integral goes to the [`deltacalc`](crate::deltacalc) oracle, and the
//! internal indices give a trace from the representation data. The observer
//! sector `:ξ^μ(q) p_μ:` and `:q̇ p:` is not expanded; its four contraction
//! results are applied as fixed rules.

pub mod linsolve;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::charges::{ChargeSet, GRepTraces, GlRepTraces, Statistics};
use crate::deltacalc::{delta_pair_integral, DerivSpec, SmearMode};
use crate::error::{JetError, Result};
use crate::exactpoly::Poly;
use crate::jetreps::divergence;
use crate::multiindex::factorial;
use crate::rational::{from_big, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Pi,
    Phi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldFactor {
    pub kind: FieldKind,
    pub z_dots: u8,
    /// Spatial derivative `∂_μ`, allowed on `φ` only.
    pub spatial_deriv: Option<usize>,
}

impl FieldFactor {
    pub fn pi() -> Self {
        FieldFactor {
            kind: FieldKind::Pi,
            z_dots: 0,
            spatial_deriv: None,
        }
    }

    pub fn phi() -> Self {
        FieldFactor {
            kind: FieldKind::Phi,
            z_dots: 0,
            spatial_deriv: None,
        }
    }

    pub fn dotted(mut self) -> Self {
        self.z_dots += 1;
        self
    }

    pub fn with_deriv(mut self, mu: usize) -> Self {
        self.spatial_deriv = Some(mu);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.z_dots > 1 {
            return Err(JetError::InvalidParameter("at most one z-derivative per field".into()));
        }
        if self.kind == FieldKind::Pi && self.spatial_deriv.is_some() {
            return Err(JetError::InvalidParameter("spatial derivatives act on φ only".into()));
        }
        Ok(())
    }
}

impl fmt::Display for FieldFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.kind {
            FieldKind::Pi => "π",
            FieldKind::Phi => "φ",
        };
        if let Some(mu) = self.spatial_deriv {
            write!(f, "∂{mu}")?;
        }
        write!(f, "{base}")?;
        if self.z_dots > 0 {
            write!(f, "'")?;
        }
        Ok(())
    }
}

/// Which delta function a contraction produces, in terms of the variables
/// of the first and second factor: `Xy` is `δ_p(x,y)`, `Yx` is `δ_p(y,x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Xy,
    Yx,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Propagator {
    pub sign: Rational,
    pub pole_order: u32,
    pub orientation: Orientation,
    pub deriv: DerivSpec,
}

/// Contraction of `a(x, z)` with `b(y, w)`.
///
/// The base cases are `φ(x,z) π(y,w) ~ δ_p(x,y)/(z-w)` and
/// `π(x,z) φ(y,w) ~ ∓ δ_p(y,x)/(z-w)`. With `a` dots on the first factor and
/// `b` on the second, `∂_z^a ∂_w^b (z-w)^{-1} = (-1)^a (a+b)! (z-w)^{-1-a-b}`.
pub fn propagator(a: &FieldFactor, b: &FieldFactor, statistics: Statistics) -> Result<Propagator> {
    a.validate()?;
    b.validate()?;
    let (base, orientation, phi_first) = match (a.kind, b.kind) {
        (FieldKind::Phi, FieldKind::Pi) => (Rational::one(), Orientation::Xy, true),
        (FieldKind::Pi, FieldKind::Phi) => (-statistics.sign(), Orientation::Yx, false),
        (FieldKind::Phi, FieldKind::Phi) => return Err(JetError::SameKindContraction("φ")),
        (FieldKind::Pi, FieldKind::Pi) => return Err(JetError::SameKindContraction("π")),
    };
    let (da, db) = (u64::from(a.z_dots), u64::from(b.z_dots));
    let mut sign = base * from_big(factorial(da + db));
    if da % 2 == 1 {
        sign = -sign;
    }
    let deriv = match (phi_first, a.spatial_deriv, b.spatial_deriv) {
        (true, Some(mu), _) => DerivSpec::OnX(mu),
        (false, _, Some(mu)) => DerivSpec::OnY(mu),
        _ => DerivSpec::None,
    };
    Ok(Propagator {
        sign,
        pole_order: 1 + (da + db) as u32,
        orientation,
        deriv,
    })
}

/// Matrix inserted between `π` and `φ`. The field carries `ρ ⊗ M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Insertion {
    Identity,
    /// `T^upper_lower ⊗ 1`
    T { upper: usize, lower: usize },
    /// `1 ⊗ M^a`
    M(usize),
}

fn kd(a: usize, b: usize) -> Rational {
    if a == b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// `tr(I_A I_B)` over `ρ ⊗ M`, from the trace parameters. The privileged
/// direction `δ^a` is `a = 0`.
pub fn insertion_trace(a: Insertion, b: Insertion, gl: &GlRepTraces, g: &GRepTraces) -> Rational {
    use Insertion::*;
    let (dr, dm) = (gl.delta(), g.delta());
    match (a, b) {
        (Identity, Identity) => dr * dm,
        (Identity, T { upper, lower }) | (T { upper, lower }, Identity) => &gl.k0 * kd(upper, lower) * dm,
        (T { upper: r1, lower: l1 }, T { upper: r2, lower: l2 }) => {
            (&gl.k1 * kd(r1, l2) * kd(r2, l1) + &gl.k2 * kd(r1, l1) * kd(r2, l2)) * dm
        }
        (Identity, M(a)) | (M(a), Identity) => dr * &g.z_m * kd(a, 0),
        (M(a), M(b)) => dr * (&g.y_m * kd(a, b) + &g.w_m * kd(a, 0) * kd(b, 0)),
        (T { upper, lower }, M(a)) | (M(a), T { upper, lower }) => {
            &gl.k0 * kd(upper, lower) * &g.z_m * kd(a, 0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearTerm {
    pub prefactor: Rational,
    pub coeff: Poly,
    pub mode: SmearMode,
    pub left: FieldFactor,
    pub insertion: Insertion,
    pub right: FieldFactor,
}

/// Observer-sector part of a generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QSector {
    /// `:ξ^μ(q) p_μ:`
    VectorField(Vec<Poly>),
    /// `-:q̇^μ p_μ:`
    Reparam,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalBilinear {
    d: usize,
    terms: Vec<BilinearTerm>,
    qsector: Option<QSector>,
}

impl NormalBilinear {
    /// Each term must read `π … φ`; polynomial dimensions must equal `d`.
    pub fn new(d: usize, terms: Vec<BilinearTerm>, qsector: Option<QSector>) -> Result<Self> {
        if d == 0 {
            return Err(JetError::ZeroDimension);
        }
        for t in &terms {
            t.left.validate()?;
            t.right.validate()?;
            if t.left.kind != FieldKind::Pi {
                return Err(JetError::InvalidParameter("left factor must be π-kind".into()));
            }
            if t.right.kind != FieldKind::Phi {
                return Err(JetError::InvalidParameter("right factor must be φ-kind".into()));
            }
            if t.coeff.dim() != d {
                return Err(JetError::DimensionMismatch {
                    expected: d,
                    found: t.coeff.dim(),
                });
            }
            if let Some(mu) = t.right.spatial_deriv {
                if mu >= d {
                    return Err(JetError::InvalidDirection { direction: mu, dim: d });
                }
            }
        }
        if let Some(QSector::VectorField(xi)) = &qsector {
            if xi.len() != d || xi.iter().any(|c| c.dim() != d) {
                return Err(JetError::DimensionMismatch {
                    expected: d,
                    found: xi.len(),
                });
            }
        }
        Ok(NormalBilinear { d, terms, qsector })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &[BilinearTerm] {
        &self.terms
    }

    pub fn qsector(&self) -> Option<&QSector> {
        self.qsector.as_ref()
    }

    /// Keeps the field terms selected by `keep` and drops the observer sector.
    pub fn field_terms_where(&self, keep: impl Fn(&BilinearTerm) -> bool) -> NormalBilinear {
        NormalBilinear {
            d: self.d,
            terms: self.terms.iter().filter(|t| keep(t)).cloned().collect(),
            qsector: None,
        }
    }
}

/// Singular part of a double contraction: pole order `k` to the coefficient
/// of `(z-w)^{-k}`, split into field and observer contributions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PoleExpansion {
    pub field: BTreeMap<u32, Rational>,
    pub qsector: BTreeMap<u32, Rational>,
}

impl PoleExpansion {
    fn add(map: &mut BTreeMap<u32, Rational>, k: u32, v: Rational) {
        if v.is_zero() {
            return;
        }
        let slot = map.entry(k).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            map.remove(&k);
        }
    }

    pub fn field_at(&self, k: u32) -> Rational {
        self.field.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn qsector_at(&self, k: u32) -> Rational {
        self.qsector.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn at(&self, k: u32) -> Rational {
        self.field_at(k) + self.qsector_at(k)
    }

    pub fn max_pole(&self) -> Option<u32> {
        self.field.keys().chain(self.qsector.keys()).max().copied()
    }
}

fn at_origin_grad(xi: &[Poly], mu: usize, nu: usize) -> Rational {
    // ∂_ν ξ^μ(0)
    xi[mu].derive(nu).constant_term()
}

fn qsector_contraction(a: &QSector, b: &QSector, d: usize) -> Result<Option<(u32, Rational)>> {
    Ok(match (a, b) {
        (QSector::VectorField(xi), QSector::VectorField(eta)) => {
            let mut v = Rational::zero();
            for mu in 0..d {
                for nu in 0..d {
                    v -= at_origin_grad(xi, mu, nu) * at_origin_grad(eta, nu, mu);
                }
            }
            Some((2, v))
        }
        (QSector::Reparam, QSector::VectorField(xi)) => Some((3, divergence(xi)?.constant_term())),
        (QSector::VectorField(xi), QSector::Reparam) => Some((3, -divergence(xi)?.constant_term())),
        (QSector::Reparam, QSector::Reparam) => Some((4, rat(d as i64))),
    })
}

/// All double contractions of `a(z)` with `b(w)` at `q = 0`.
pub fn double_contraction(
    a: &NormalBilinear,
    b: &NormalBilinear,
    gl: &GlRepTraces,
    g: &GRepTraces,
    d: usize,
    p: u32,
) -> Result<PoleExpansion> {
    for bl in [a, b] {
        if bl.d != d {
            return Err(JetError::DimensionMismatch {
                expected: d,
                found: bl.d,
            });
        }
    }
    let statistics = g.statistics;
    let mut out = PoleExpansion::default();
    for ta in &a.terms {
        for tb in &b.terms {
            let trace = insertion_trace(ta.insertion, tb.insertion, gl, g);
            if trace.is_zero() {
                continue;
            }
            // φ_A with π_B gives δ_p(x,y); π_A with φ_B gives δ_p(y,x).
            let p1 = propagator(&ta.right, &tb.left, statistics)?;
            let p2 = propagator(&ta.left, &tb.right, statistics)?;
            debug_assert_eq!((p1.orientation, p2.orientation), (Orientation::Xy, Orientation::Yx));
            let integral = delta_pair_integral(&ta.coeff, &tb.coeff, p1.deriv, p2.deriv, (ta.mode, tb.mode), d, p)?;
            if integral.is_zero() {
                continue;
            }
            let v = &ta.prefactor * &tb.prefactor * &p1.sign * &p2.sign * trace * integral;
            PoleExpansion::add(&mut out.field, p1.pole_order + p2.pole_order, v);
        }
    }
    if let (Some(qa), Some(qb)) = (&a.qsector, &b.qsector) {
        if let Some((k, v)) = qsector_contraction(qa, qb, d)? {
            PoleExpansion::add(&mut out.qsector, k, v);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// `J_X = ∫ :π X^a(x) M^a φ:`
    Current(Vec<Poly>),
    /// `L_ξ = ∫ :π ξ_0^μ ∂_μ φ: + ∫ :π ∂_ν ξ^μ T^ν_μ φ:` plus `:ξ^μ(q) p_μ:`
    VectorField(Vec<Poly>),
    /// `T = (λ-1) ∫ :π φ̇: + λ ∫ :π̇ φ:` plus `-:q̇ p:`; the value is `λ`.
    Reparam(Rational),
}

pub fn build_generator(spec: &GeneratorSpec, d: usize) -> Result<NormalBilinear> {
    let term = |prefactor: Rational, coeff: Poly, mode, left, insertion, right| BilinearTerm {
        prefactor,
        coeff,
        mode,
        left,
        insertion,
        right,
    };
    match spec {
        GeneratorSpec::Current(x) => {
            let terms = x
                .iter()
                .enumerate()
                .filter(|(_, xa)| !xa.is_zero())
                .map(|(a, xa)| {
                    term(Rational::one(), xa.clone(), SmearMode::Plain, FieldFactor::pi(), Insertion::M(a), FieldFactor::phi())
                })
                .collect();
            NormalBilinear::new(d, terms, None)
        }
        GeneratorSpec::VectorField(xi) => {
            if xi.len() != d {
                return Err(JetError::DimensionMismatch {
                    expected: d,
                    found: xi.len(),
                });
            }
            let mut terms = Vec::new();
            for (mu, c) in xi.iter().enumerate() {
                if !c.shift_to_zero().is_zero() {
                    terms.push(term(
                        Rational::one(),
                        c.clone(),
                        SmearMode::Shifted,
                        FieldFactor::pi(),
                        Insertion::Identity,
                        FieldFactor::phi().with_deriv(mu),
                    ));
                }
            }
            for nu in 0..d {
                for (mu, c) in xi.iter().enumerate() {
                    let grad = c.derive(nu);
                    if !grad.is_zero() {
                        terms.push(term(
                            Rational::one(),
                            grad,
                            SmearMode::Plain,
                            FieldFactor::pi(),
                            Insertion::T { upper: nu, lower: mu },
                            FieldFactor::phi(),
                        ));
                    }
                }
            }
            NormalBilinear::new(d, terms, Some(QSector::VectorField(xi.clone())))
        }
        GeneratorSpec::Reparam(lambda) => {
            let one = Poly::one(d);
            let mut terms = Vec::new();
            let first = lambda - Rational::one();
            if !first.is_zero() {
                terms.push(term(first, one.clone(), SmearMode::Plain, FieldFactor::pi(), Insertion::Identity, FieldFactor::phi().dotted()));
            }
            if !lambda.is_zero() {
                terms.push(term(lambda.clone(), one, SmearMode::Plain, FieldFactor::pi().dotted(), Insertion::Identity, FieldFactor::phi()));
            }
            NormalBilinear::new(d, terms, Some(QSector::Reparam))
        }
    }
}

/// Charges recovered from the contraction engine. At `d = 1` the two
/// Virasoro channels coincide and only `c1 + c2` is measurable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasuredCharges {
    pub d: usize,
    pub c1: Option<Rational>,
    pub c2: Option<Rational>,
    pub c1_plus_c2: Rational,
    pub c3: Rational,
    pub c4: Rational,
    pub c5: Rational,
    pub c6: Rational,
    pub c7: Rational,
    pub c8: Rational,
    /// Field-sector parts, excluding the observer constants.
    pub field_c1_plus_c2: Rational,
    pub field_c3: Rational,
    pub field_c4: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeComparison {
    pub name: &'static str,
    pub closed: Rational,
    pub measured: Rational,
}

impl ChargeComparison {
    pub fn matches(&self) -> bool {
        self.closed == self.measured
    }
}

impl MeasuredCharges {
    /// Every measured quantity next to its closed-form counterpart.
    pub fn compare(&self, closed: &ChargeSet) -> Vec<ChargeComparison> {
        let c = &closed.charges;
        let mut out = Vec::new();
        let mut push = |name, closed: &Rational, measured: &Rational| {
            out.push(ChargeComparison {
                name,
                closed: closed.clone(),
                measured: measured.clone(),
            })
        };
        if let (Some(c1), Some(c2)) = (&self.c1, &self.c2) {
            push("c1", &c.c1, c1);
            push("c2", &c.c2, c2);
        }
        push("c1+c2", &(&c.c1 + &c.c2), &self.c1_plus_c2);
        push("c3", &c.c3, &self.c3);
        push("c4", &c.c4, &self.c4);
        push("c5", &c.c5, &self.c5);
        push("c6", &c.c6, &self.c6);
        push("c7", &c.c7, &self.c7);
        push("c8", &c.c8, &self.c8);
        out
    }
}

fn basis_vector(len: usize, d: usize, at: usize) -> Vec<Poly> {
    (0..len)
        .map(|a| if a == at { Poly::one(d) } else { Poly::zero(d) })
        .collect()
}

/// `x_from ∂_to` as a vector field.
fn linear_field(d: usize, from: usize, to: usize) -> Vec<Poly> {
    (0..d)
        .map(|mu| if mu == to { Poly::var(d, from) } else { Poly::zero(d) })
        .collect()
}

/// `(T1, T2) = (∂_ν ξ^μ ∂_μ η^ν, ∂_μ ξ^μ ∂_ν η^ν)` at the origin.
pub fn virasoro_channels(xi: &[Poly], eta: &[Poly]) -> Result<(Rational, Rational)> {
    let d = xi.len();
    let mut t1 = Rational::zero();
    for mu in 0..d {
        for nu in 0..d {
            t1 += at_origin_grad(xi, mu, nu) * at_origin_grad(eta, nu, mu);
        }
    }
    let t2 = divergence(xi)?.constant_term() * divergence(eta)?.constant_term();
    Ok((t1, t2))
}

pub fn extract_charges(d: usize, p: u32, lambda: &Rational, gl: &GlRepTraces, g: &GRepTraces) -> Result<MeasuredCharges> {
    if d == 0 {
        return Err(JetError::ZeroDimension);
    }
    let contract = |a: &GeneratorSpec, b: &GeneratorSpec| -> Result<PoleExpansion> {
        double_contraction(&build_generator(a, d)?, &build_generator(b, d)?, gl, g, d, p)
    };
    let vf = |xi: Vec<Poly>| GeneratorSpec::VectorField(xi);

    // Virasoro channels: Z = -c1 T1 - c2 T2 at pole 2.
    let x0d0 = linear_field(d, 0, 0);
    let diag = contract(&vf(x0d0.clone()), &vf(x0d0.clone()))?;
    let (c1, c2) = if d >= 2 {
        let xi = linear_field(d, 1, 0);
        let eta = linear_field(d, 0, 1);
        let off = contract(&vf(xi.clone()), &vf(eta.clone()))?;
        let pairs = [(xi, eta, off), (x0d0.clone(), x0d0.clone(), diag.clone())];
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (a, b, z) in &pairs {
            let (t1, t2) = virasoro_channels(a, b)?;
            rows.push(vec![-t1, -t2]);
            rhs.push(z.at(2));
        }
        let sol = linsolve::solve(rows, rhs)?;
        (Some(sol[0].clone()), Some(sol[1].clone()))
    } else {
        (None, None)
    };
    let c1_plus_c2 = -diag.at(2);
    let field_c1_plus_c2 = -diag.field_at(2);

    let e0 = basis_vector(2, d, 0);
    let e1 = basis_vector(2, d, 1);
    let c5 = contract(&GeneratorSpec::Current(e1.clone()), &GeneratorSpec::Current(e1))?.at(2);
    let c5_plus_c8 = contract(&GeneratorSpec::Current(e0.clone()), &GeneratorSpec::Current(e0.clone()))?.at(2);
    let c7 = contract(&vf(x0d0.clone()), &GeneratorSpec::Current(e0.clone()))?.at(2);

    let t = GeneratorSpec::Reparam(lambda.clone());
    let tl = contract(&t, &vf(x0d0))?;
    let tt = contract(&t, &t)?;
    let tj = contract(&t, &GeneratorSpec::Current(e0))?;

    Ok(MeasuredCharges {
        d,
        c1,
        c2,
        c1_plus_c2,
        c3: tl.at(3),
        c4: rat(2) * tt.at(4),
        c5: c5.clone(),
        c6: tj.at(3),
        c7,
        c8: c5_plus_c8 - c5,
        field_c1_plus_c2,
        field_c3: tl.field_at(3),
        field_c4: rat(2) * tt.field_at(4),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charges::{closed_form, field_parts, from_sl_gl1, scalar_traces};
    use crate::exactpoly::parse_poly_vec;
    use crate::rational::frac;

    fn g1(st: Statistics) -> GRepTraces {
        GRepTraces::new(1, rat(1), rat(0), rat(0), st).unwrap()
    }

    #[test]
    fn propagator_table() {
        use Statistics::*;
        let pr = |a, b, s| {
            let p = propagator(&a, &b, s).unwrap();
            (p.sign, p.pole_order, p.orientation)
        };
        let (phi, pi) = (FieldFactor::phi(), FieldFactor::pi());
        assert_eq!(pr(phi, pi, Bose), (rat(1), 1, Orientation::Xy));
        assert_eq!(pr(pi, phi.dotted(), Bose), (rat(-1), 2, Orientation::Yx));
        assert_eq!(pr(pi.dotted(), phi.dotted(), Fermi), (rat(-2), 3, Orientation::Yx));
        // remaining table lines
        assert_eq!(pr(pi, phi, Bose), (rat(-1), 1, Orientation::Yx));
        assert_eq!(pr(pi, phi, Fermi), (rat(1), 1, Orientation::Yx));
        assert_eq!(pr(phi.dotted(), pi, Bose), (rat(-1), 2, Orientation::Xy));
        assert_eq!(pr(phi, pi.dotted(), Bose), (rat(1), 2, Orientation::Xy));
        assert_eq!(pr(pi.dotted(), phi, Bose), (rat(1), 2, Orientation::Yx));
        assert_eq!(pr(phi.dotted(), pi.dotted(), Bose), (rat(-2), 3, Orientation::Xy));
        assert_eq!(pr(pi.dotted(), phi.dotted(), Bose), (rat(2), 3, Orientation::Yx));
    }

    #[test]
    fn propagator_derivatives_and_errors() {
        let p = propagator(&FieldFactor::phi().with_deriv(1), &FieldFactor::pi(), Statistics::Bose).unwrap();
        assert_eq!(p.deriv, DerivSpec::OnX(1));
        let p = propagator(&FieldFactor::pi(), &FieldFactor::phi().with_deriv(0), Statistics::Bose).unwrap();
        assert_eq!(p.deriv, DerivSpec::OnY(0));
        assert_eq!(
            propagator(&FieldFactor::phi(), &FieldFactor::phi(), Statistics::Bose),
            Err(JetError::SameKindContraction("φ"))
        );
        assert!(propagator(&FieldFactor::pi(), &FieldFactor::pi(), Statistics::Fermi).is_err());
        assert!(propagator(&FieldFactor::pi().dotted().dotted(), &FieldFactor::phi(), Statistics::Bose).is_err());
    }

    #[test]
    fn trace_rules_match_explicit_matrices() {
        use crate::jetreps::{GlRep, MatrixRep, RatMatrix};
        let diag = |v: [i64; 3]| {
            let mut m = RatMatrix::zero(3);
            for (i, x) in v.into_iter().enumerate() {
                m.set(i, i, rat(x));
            }
            m
        };
        let g_rep = MatrixRep::new(vec![diag([1, 1, 2]), diag([1, -1, 0])]).unwrap();
        let d = 2;
        let kappa = frac(1, 3);
        let gl_rep = GlRep::vector(d, kappa.clone());
        // 1 + dκ, 1, 2κ + dκ²
        let gl = GlRepTraces::new(2, rat(1) + rat(2) * &kappa, rat(1), rat(2) * &kappa + rat(2) * &kappa * &kappa).unwrap();
        let g = GRepTraces::new(3, rat(2), rat(4), rat(4), Statistics::Bose).unwrap();
        let t_full = gl_rep.with_spectator(3);
        let m_full = g_rep.with_spectator(2);
        let matrix = |ins: Insertion| match ins {
            Insertion::Identity => RatMatrix::identity(6),
            Insertion::T { upper, lower } => t_full.t(upper, lower).clone(),
            Insertion::M(a) => m_full.matrix(a).clone(),
        };
        let mut all = vec![Insertion::Identity, Insertion::M(0), Insertion::M(1)];
        for upper in 0..d {
            for lower in 0..d {
                all.push(Insertion::T { upper, lower });
            }
        }
        for &a in &all {
            for &b in &all {
                assert_eq!(insertion_trace(a, b, &gl, &g), matrix(a).mul(&matrix(b)).trace(), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn current_current_example() {
        let j = build_generator(&GeneratorSpec::Current(vec![Poly::one(1)]), 1).unwrap();
        let out = double_contraction(&j, &j, &scalar_traces(1), &g1(Statistics::Bose), 1, 2).unwrap();
        assert_eq!(out.at(2), rat(-3));
        assert_eq!(out.max_pole(), Some(2));
    }

    #[test]
    fn qsector_example() {
        let xi = parse_poly_vec("x1, 0", 2).unwrap();
        let eta = parse_poly_vec("0, x0", 2).unwrap();
        let a = build_generator(&GeneratorSpec::VectorField(xi.clone()), 2).unwrap();
        let b = build_generator(&GeneratorSpec::VectorField(eta.clone()), 2).unwrap();
        let out = double_contraction(&a, &b, &scalar_traces(2), &g1(Statistics::Bose), 2, 1).unwrap();
        assert_eq!(out.qsector_at(2), rat(-1));
        assert_eq!(virasoro_channels(&xi, &eta).unwrap(), (rat(1), rat(0)));
    }

    #[test]
    fn reparam_example() {
        let t = build_generator(&GeneratorSpec::Reparam(rat(0)), 1).unwrap();
        let out = double_contraction(&t, &t, &scalar_traces(1), &g1(Statistics::Bose), 1, 0).unwrap();
        assert_eq!(out.field_at(4), rat(1));
        assert_eq!(out.field.len(), 1);
    }

    #[test]
    fn generator_shapes() {
        let j = build_generator(&GeneratorSpec::Current(vec![Poly::one(2)]), 2).unwrap();
        assert_eq!(j.terms().len(), 1);
        assert_eq!(j.terms()[0].insertion, Insertion::M(0));
        assert_eq!(j.terms()[0].mode, SmearMode::Plain);

        let l = build_generator(&GeneratorSpec::VectorField(parse_poly_vec("3, -1", 2).unwrap()), 2).unwrap();
        assert!(l.terms().is_empty());
        assert!(matches!(l.qsector(), Some(QSector::VectorField(_))));

        let t = build_generator(&GeneratorSpec::Reparam(rat(1)), 1).unwrap();
        assert_eq!(t.terms().len(), 1);
        assert_eq!(t.terms()[0].left, FieldFactor::pi().dotted());
        assert_eq!(t.terms()[0].right, FieldFactor::phi());
    }

    #[test]
    fn bilinear_invariants_enforced() {
        let bad = BilinearTerm {
            prefactor: rat(1),
            coeff: Poly::one(1),
            mode: SmearMode::Plain,
            left: FieldFactor::phi(),
            insertion: Insertion::Identity,
            right: FieldFactor::phi(),
        };
        assert!(NormalBilinear::new(1, vec![bad], None).is_err());
    }

    #[test]
    fn extraction_examples() {
        let m = extract_charges(1, 0, &rat(0), &scalar_traces(1), &g1(Statistics::Bose)).unwrap();
        assert_eq!(m.c1_plus_c2, rat(1));
        assert_eq!(m.c4, rat(4));
        let gl = from_sl_gl1(rat(1), rat(2), 2, 2).unwrap();
        let g = GRepTraces::new(2, rat(1), rat(3), rat(-1), Statistics::Fermi).unwrap();
        let m = extract_charges(2, 2, &frac(1, 2), &gl, &g).unwrap();
        assert_eq!(m.c3, rat(1));
        assert_eq!(m.field_c3, rat(0));
        assert_eq!(m.c6, rat(0));
    }

    #[test]
    fn matches_closed_form_small_sweep() {
        let gl_sets = [
            scalar_traces(1),
            from_sl_gl1(frac(-1, 2), rat(3), 2, 2).unwrap(),
            GlRepTraces::new(3, rat(2), frac(1, 3), rat(-1)).unwrap(),
        ];
        for d in 1..=2 {
            for p in 0..=2 {
                for lambda in [rat(0), frac(1, 2), rat(2)] {
                    for st in [Statistics::Bose, Statistics::Fermi] {
                        for gl in &gl_sets {
                            let g = GRepTraces::new(2, rat(3), frac(1, 2), rat(-2), st).unwrap();
                            let m = extract_charges(d, p, &lambda, gl, &g).unwrap();
                            let closed = closed_form(d, p, &lambda, gl, &g).unwrap();
                            for c in m.compare(&closed) {
                                assert!(c.matches(), "{} d={d} p={p} λ={lambda} {st}: closed {} measured {}", c.name, c.closed, c.measured);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn statistics_flip_negates_field_parts() {
        let gl = from_sl_gl1(rat(1), frac(1, 2), 2, 2).unwrap();
        let mk = |st| GRepTraces::new(3, rat(1), rat(2), rat(1), st).unwrap();
        let b = extract_charges(2, 2, &rat(2), &gl, &mk(Statistics::Bose)).unwrap();
        let f = extract_charges(2, 2, &rat(2), &gl, &mk(Statistics::Fermi)).unwrap();
        assert_eq!(b.field_c1_plus_c2, -f.field_c1_plus_c2.clone());
        assert_eq!(b.field_c3, -f.field_c3.clone());
        assert_eq!(b.field_c4, -f.field_c4.clone());
        assert_eq!(b.c5, -f.c5.clone());
        assert_eq!(&b.c1_plus_c2 - &b.field_c1_plus_c2, &f.c1_plus_c2 - &f.field_c1_plus_c2);
        assert_eq!(&b.c4 - &b.field_c4, rat(4));
        let fp = field_parts(2, 2, &rat(2), &gl, &mk(Statistics::Bose)).unwrap();
        assert_eq!(b.field_c4, fp.c4);
    }

    #[test]
    fn mixed_vector_pieces_are_symmetric() {
        let gl = from_sl_gl1(frac(2, 3), rat(1), 2, 2).unwrap();
        let xi = parse_poly_vec("x0 + x1^2, x0 x1", 2).unwrap();
        let eta = parse_poly_vec("x1 - x0^2 + x0, 2 x0 + 3 x1", 2).unwrap();
        let split = |v: &Vec<Poly>| {
            let l = build_generator(&GeneratorSpec::VectorField(v.clone()), 2).unwrap();
            (
                l.field_terms_where(|t| t.right.spatial_deriv.is_some()),
                l.field_terms_where(|t| t.right.spatial_deriv.is_none()),
            )
        };
        let (x1, x2) = split(&xi);
        let (e1, e2) = split(&eta);
        let div_product = divergence(&xi).unwrap().constant_term() * divergence(&eta).unwrap().constant_term();
        assert_eq!(div_product, rat(4));
        for st in [Statistics::Bose, Statistics::Fermi] {
            let g = g1(st);
            for p in 0..=3 {
                let z12 = double_contraction(&x1, &e2, &gl, &g, 2, p).unwrap().at(2);
                let z21 = double_contraction(&x2, &e1, &gl, &g, 2, p).unwrap().at(2);
                assert_eq!(z12, z21, "p={p}");
                let b = crate::jetsums::closed_value('B', 2, p);
                assert_eq!(z12, -st.sign() * from_big(b) * &gl.k0 * &div_product, "p={p}");
            }
        }
    }

    #[test]
    fn pole_orders_bounded() {
        let gl = from_sl_gl1(rat(1), rat(1), 2, 2).unwrap();
        let g = GRepTraces::new(1, rat(1), rat(1), rat(1), Statistics::Bose).unwrap();
        let gens = [
            GeneratorSpec::Current(parse_poly_vec("x0, 1", 2).unwrap()),
            GeneratorSpec::VectorField(parse_poly_vec("x0^2, x1", 2).unwrap()),
            GeneratorSpec::Reparam(frac(1, 3)),
        ];
        for (i, a) in gens.iter().enumerate() {
            for (j, b) in gens.iter().enumerate() {
                let out = double_contraction(&build_generator(a, 2).unwrap(), &build_generator(b, 2).unwrap(), &gl, &g, 2, 2).unwrap();
                let top = out.max_pole().unwrap_or(0);
                assert!(top <= 4);
                if top == 4 {
                    assert_eq!((i, j), (2, 2));
                }
            }
        }
    }
}
