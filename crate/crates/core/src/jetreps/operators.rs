use num_traits::Zero;

use super::algebra::{GlRep, MatrixRep, StructureConstants};
use super::matrix::PolyMatrix;
use crate::error::{JetError, Result};
use crate::exactpoly::Poly;
use crate::multiindex::{JetLattice, MultiIndex};
use crate::rational::{from_big, Rational};

/// `J_X` on jets ⊗ rep: block `(m, n)` is `C(m,n) ∂_{m-n} X^a(q) M^a`, the
/// matrix of multiplication by `X(x+q)` in the Taylor basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeJetOperator {
    pub d: usize,
    pub p: u32,
    pub rep_size: usize,
    pub matrix: PolyMatrix,
}

/// `L_ξ = ξ^μ(q) ∂/∂q^μ + K_ξ(q)`.
///
/// `K_ξ` is the matrix, in the Taylor basis, of
/// `φ ↦ (ξ_0^μ(x) ∂_μ φ + ∂_ν ξ^μ(x+q) T^ν_μ φ)|_p` with
/// `ξ_0(x) = ξ(x+q) - ξ(q)`. The transport term is the jet part of the
/// improved momentum; no separate momentum operator is kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffJetOperator {
    pub d: usize,
    pub p: u32,
    pub rep_size: usize,
    pub vector: Vec<Poly>,
    pub matrix: PolyMatrix,
}

fn check_field(v: &[Poly], len: usize, d: usize) -> Result<()> {
    if d == 0 {
        return Err(JetError::ZeroDimension);
    }
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

pub fn gauge_operator(x: &[Poly], rep: &MatrixRep, d: usize, p: u32) -> Result<GaugeJetOperator> {
    check_field(x, rep.dim_g(), d)?;
    let lattice = JetLattice::new(d, p)?;
    let r = rep.size();
    let mut matrix = PolyMatrix::zero(lattice.len() * r, d);
    for (i, m) in lattice.indices().iter().enumerate() {
        for (j, n) in lattice.indices().iter().enumerate() {
            let Ok(diff) = m.sub(n) else { continue };
            let binom = from_big(m.binomial(n)?);
            for (a, xa) in x.iter().enumerate() {
                let entry = xa.derive_multi(&diff).scale(&binom);
                if entry.is_zero() {
                    continue;
                }
                let ma = rep.matrix(a);
                for k in 0..r {
                    for l in 0..r {
                        let c = ma.get(k, l);
                        if !c.is_zero() {
                            matrix.add_entry(i * r + k, j * r + l, &entry.scale(c));
                        }
                    }
                }
            }
        }
    }
    Ok(GaugeJetOperator {
        d,
        p,
        rep_size: r,
        matrix,
    })
}

/// Groups a polynomial in `(x, q)` (x first, `2d` variables) by its
/// x-monomial, returning the q-polynomial coefficient of `x^m`.
fn x_coefficient(f: &Poly, m: &MultiIndex, d: usize) -> Poly {
    let mut out = Poly::zero(d);
    for (e, c) in f.terms() {
        if e.components()[..d] == *m.components() {
            out.add_term(MultiIndex::new(e.components()[d..].to_vec()), c.clone());
        }
    }
    out
}

pub fn diff_operator(xi: &[Poly], rep: &GlRep, p: u32) -> Result<DiffJetOperator> {
    let d = rep.dim();
    check_field(xi, d, d)?;
    let lattice = JetLattice::new(d, p)?;
    let r = rep.size();
    let two = 2 * d;
    // ξ(x + q) in 2d variables
    let shift: Vec<Poly> = (0..d)
        .map(|mu| &Poly::var(two, mu) + &Poly::var(two, d + mu))
        .collect();
    let big_xi: Vec<Poly> = xi.iter().map(|c| c.substitute(&shift)).collect::<Result<_>>()?;
    let xi_q: Vec<Poly> = xi.iter().map(|c| c.embed(two, d)).collect();
    let xi0: Vec<Poly> = big_xi.iter().zip(&xi_q).map(|(a, b)| a - b).collect();
    // ∂_ν ξ^μ(x+q), indexed [ν][μ]
    let grad: Vec<Vec<Poly>> = (0..d)
        .map(|nu| big_xi.iter().map(|c| c.derive(nu)).collect())
        .collect();

    let mut matrix = PolyMatrix::zero(lattice.len() * r, d);
    for (j, n) in lattice.indices().iter().enumerate() {
        let mut exps = vec![0u32; two];
        exps[..d].copy_from_slice(n.components());
        let basis = Poly::monomial(MultiIndex::new(exps), Rational::from_integer(n.factorial()).recip());
        let mut transport = Poly::zero(two);
        for mu in 0..d {
            transport = &transport + &(&xi0[mu] * &basis.derive(mu));
        }
        for (i, m) in lattice.indices().iter().enumerate() {
            let fact = from_big(m.factorial());
            let s = x_coefficient(&transport, m, d).scale(&fact);
            if !s.is_zero() {
                for k in 0..r {
                    matrix.add_entry(i * r + k, j * r + k, &s);
                }
            }
            for (nu, row) in grad.iter().enumerate() {
                for (mu, g) in row.iter().enumerate() {
                    let t = rep.t(nu, mu);
                    if t.is_zero() || g.is_zero() {
                        continue;
                    }
                    let e = x_coefficient(&(g * &basis), m, d).scale(&fact);
                    if e.is_zero() {
                        continue;
                    }
                    for k in 0..r {
                        for l in 0..r {
                            let c = t.get(k, l);
                            if !c.is_zero() {
                                matrix.add_entry(i * r + k, j * r + l, &e.scale(c));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(DiffJetOperator {
        d,
        p,
        rep_size: r,
        vector: xi.to_vec(),
        matrix,
    })
}

fn check_shapes(a: (usize, u32, usize), b: (usize, u32, usize)) -> Result<()> {
    if a.0 != b.0 {
        return Err(JetError::DimensionMismatch {
            expected: a.0,
            found: b.0,
        });
    }
    if a != b {
        return Err(JetError::ShapeMismatch {
            left: a.2,
            right: b.2,
        });
    }
    Ok(())
}

pub fn bracket_gauge(j1: &GaugeJetOperator, j2: &GaugeJetOperator) -> Result<GaugeJetOperator> {
    check_shapes((j1.d, j1.p, j1.rep_size), (j2.d, j2.p, j2.rep_size))?;
    Ok(GaugeJetOperator {
        matrix: j1.matrix.commutator(&j2.matrix)?,
        ..j1.clone()
    })
}

/// `a·∂ B`
fn directional(a: &[Poly], b: &PolyMatrix) -> PolyMatrix {
    let mut out = PolyMatrix::zero(b.size(), b.qdim());
    for (mu, am) in a.iter().enumerate() {
        if am.is_zero() {
            continue;
        }
        out = out.add(&b.derive(mu).scale_poly(am)).expect("same shape");
    }
    out
}

/// `[a1·∂ + B1, a2·∂ + B2] = (a1·∂a2 - a2·∂a1)·∂ + (a1·∂B2 - a2·∂B1 + [B1, B2])`
pub fn bracket_diff(l1: &DiffJetOperator, l2: &DiffJetOperator) -> Result<DiffJetOperator> {
    check_shapes((l1.d, l1.p, l1.rep_size), (l2.d, l2.p, l2.rep_size))?;
    let vector = lie_bracket(&l1.vector, &l2.vector)?;
    let matrix = directional(&l1.vector, &l2.matrix)
        .sub(&directional(&l2.vector, &l1.matrix))?
        .add(&l1.matrix.commutator(&l2.matrix)?)?;
    Ok(DiffJetOperator {
        d: l1.d,
        p: l1.p,
        rep_size: l1.rep_size,
        vector,
        matrix,
    })
}

/// `[L, J] = ξ·∂A + [K, A]` for `L` and `J` built on the same space
/// (use [`GlRep::with_spectator`] and [`MatrixRep::with_spectator`]).
pub fn bracket_mixed(l: &DiffJetOperator, j: &GaugeJetOperator) -> Result<GaugeJetOperator> {
    check_shapes((l.d, l.p, l.rep_size), (j.d, j.p, j.rep_size))?;
    let matrix = directional(&l.vector, &j.matrix).add(&l.matrix.commutator(&j.matrix)?)?;
    Ok(GaugeJetOperator {
        matrix,
        ..j.clone()
    })
}

/// `[ξ, η]^ν = ξ^μ ∂_μ η^ν - η^μ ∂_μ ξ^ν`
pub fn lie_bracket(xi: &[Poly], eta: &[Poly]) -> Result<Vec<Poly>> {
    let d = xi.len();
    check_field(xi, d, d)?;
    check_field(eta, d, d)?;
    Ok((0..d)
        .map(|nu| {
            let mut c = Poly::zero(d);
            for mu in 0..d {
                c = &c + &(&xi[mu] * &eta[nu].derive(mu));
                c = &c - &(&eta[mu] * &xi[nu].derive(mu));
            }
            c
        })
        .collect())
}

/// `ξ^μ ∂_μ X^a`, the action on scalar (weight zero) gauge functions.
pub fn vector_action(xi: &[Poly], x: &[Poly]) -> Result<Vec<Poly>> {
    let d = xi.len();
    check_field(xi, d, d)?;
    check_field(x, x.len(), d)?;
    Ok(x.iter()
        .map(|xa| {
            let mut c = Poly::zero(d);
            for (mu, xm) in xi.iter().enumerate() {
                c = &c + &(xm * &xa.derive(mu));
            }
            c
        })
        .collect())
}

/// `ξ^μ ∂_μ X^a + ∂_μ ξ^μ X^a = ∂_μ(ξ^μ X^a)`, the weight-one action.
pub fn density_action(xi: &[Poly], x: &[Poly]) -> Result<Vec<Poly>> {
    let div = divergence(xi)?;
    let base = vector_action(xi, x)?;
    Ok(base.iter().zip(x).map(|(b, xa)| b + &(&div * xa)).collect())
}

/// `∂_μ ξ^μ`
pub fn divergence(xi: &[Poly]) -> Result<Poly> {
    let d = xi.len();
    check_field(xi, d, d)?;
    let mut out = Poly::zero(d);
    for (mu, c) in xi.iter().enumerate() {
        out = &out + &c.derive(mu);
    }
    Ok(out)
}

/// Gauge-function bracket through the structure constants.
pub fn gauge_bracket(f: &StructureConstants, x: &[Poly], y: &[Poly]) -> Result<Vec<Poly>> {
    f.bracket(x, y)
}
