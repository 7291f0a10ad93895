//! Finite-dimensional Lie algebra data: structure constants of `g`, matrix
//! representations of `g`, and `gl(d)` representations.
//!
//! Everything is written in a real form. Where the physics convention reads
//! `[J^a, J^b] = i f^{abc} J^c` with hermitian generators, we use
//! anti-hermitian generators and `[M^a, M^b] = f^{abc} M^c`. The bracket of
//! gauge functions is then `[X, Y]^c = f^{abc} X^a Y^b` with no `i`.

use num_traits::{One, Zero};

use super::matrix::RatMatrix;
use crate::error::{JetError, Result};
use crate::exactpoly::Poly;
use crate::rational::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    f: Vec<Rational>,
}

impl StructureConstants {
    /// `f^{abc} = 0` on an `n`-dimensional abelian algebra.
    pub fn abelian(n: usize) -> Self {
        StructureConstants {
            dim: n,
            f: vec![Rational::zero(); n * n * n],
        }
    }

    /// `f^{abc} = ε^{abc}`, the real form of `su(2)`.
    pub fn so3() -> Self {
        let mut s = Self::abelian(3);
        for (a, b, c, v) in [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1), (1, 0, 2, -1), (2, 1, 0, -1), (0, 2, 1, -1)] {
            s.f[(a * 3 + b) * 3 + c] = rat(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &Rational {
        &self.f[(a * self.dim + b) * self.dim + c]
    }

    pub fn is_totally_antisymmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let v = self.get(a, b, c);
                    *v == -self.get(b, a, c) && *v == -self.get(a, c, b)
                })
            })
        })
    }

    /// `Σ_e f^{abe} f^{ecd} + f^{bce} f^{ead} + f^{cae} f^{ebd} = 0`.
    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.dim;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let mut s = Rational::zero();
                        for e in 0..n {
                            s += self.get(a, b, e) * self.get(e, c, d)
                                + self.get(b, c, e) * self.get(e, a, d)
                                + self.get(c, a, e) * self.get(e, b, d);
                        }
                        if !s.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Pointwise bracket `[X, Y]^c = f^{abc} X^a Y^b`.
    pub fn bracket(&self, x: &[Poly], y: &[Poly]) -> Result<Vec<Poly>> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(JetError::DimensionMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        let pdim = x.first().map(Poly::dim).unwrap_or(0);
        let mut out = vec![Poly::zero(pdim); self.dim];
        for a in 0..self.dim {
            for b in 0..self.dim {
                let xy = x[a].multiply(&y[b])?;
                if xy.is_zero() {
                    continue;
                }
                for (c, slot) in out.iter_mut().enumerate() {
                    let f = self.get(a, b, c);
                    if !f.is_zero() {
                        *slot = &*slot + &xy.scale(f);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Matrices `M^a` representing `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRep {
    mats: Vec<RatMatrix>,
}

impl MatrixRep {
    pub fn new(mats: Vec<RatMatrix>) -> Result<Self> {
        let n = mats.first().map(RatMatrix::size).unwrap_or(0);
        for m in &mats {
            if m.size() != n {
                return Err(JetError::ShapeMismatch { left: n, right: m.size() });
            }
        }
        Ok(MatrixRep { mats })
    }

    /// `dim g` copies of the `1 × 1` identity; a faithful rep of `u(1)` when
    /// `dim g = 1`.
    pub fn abelian(dim_g: usize) -> Self {
        MatrixRep {
            mats: vec![RatMatrix::identity(1); dim_g],
        }
    }

    /// Adjoint of `so(3)`: `(M^a)_{bc} = -ε_{abc}`.
    pub fn so3_adjoint() -> Self {
        let f = StructureConstants::so3();
        let mats = (0..3)
            .map(|a| {
                let mut m = RatMatrix::zero(3);
                for b in 0..3 {
                    for c in 0..3 {
                        m.set(b, c, -f.get(a, b, c).clone());
                    }
                }
                m
            })
            .collect();
        MatrixRep { mats }
    }

    pub fn dim_g(&self) -> usize {
        self.mats.len()
    }

    /// Size of the representation space.
    pub fn size(&self) -> usize {
        self.mats.first().map(RatMatrix::size).unwrap_or(0)
    }

    pub fn matrix(&self, a: usize) -> &RatMatrix {
        &self.mats[a]
    }

    /// `I_n ⊗ M^a`, the same rep acting on the right factor of a product.
    pub fn with_spectator(&self, n: usize) -> MatrixRep {
        let id = RatMatrix::identity(n);
        MatrixRep {
            mats: self.mats.iter().map(|m| id.kron(m)).collect(),
        }
    }

    /// `[M^a, M^b] = f^{abc} M^c` for every pair.
    pub fn satisfies(&self, f: &StructureConstants) -> bool {
        if f.dim() != self.dim_g() {
            return false;
        }
        let n = self.dim_g();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let lhs = self.mats[a].commutator(&self.mats[b]);
                let mut rhs = RatMatrix::zero(self.size());
                for c in 0..n {
                    rhs = rhs.add(&self.mats[c].scale(f.get(a, b, c)));
                }
                lhs == rhs
            })
        })
    }
}

/// Matrices `T^μ_ν` representing `gl(d)`, satisfying
/// `[T^μ_ρ, T^ν_σ] = δ^ν_ρ T^μ_σ - δ^μ_σ T^ν_ρ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlRep {
    d: usize,
    mats: Vec<RatMatrix>,
}

impl GlRep {
    /// Density of weight `kappa` on a one-dimensional space: `T^μ_ν = κ δ^μ_ν`.
    pub fn density(d: usize, kappa: Rational) -> Self {
        let mut mats = Vec::with_capacity(d * d);
        for mu in 0..d {
            for nu in 0..d {
                let v = if mu == nu { kappa.clone() } else { Rational::zero() };
                mats.push(RatMatrix::identity(1).scale(&v));
            }
        }
        GlRep { d, mats }
    }

    /// Vector tensor density: `T^μ_ν = E_{μν} + κ δ^μ_ν I`.
    pub fn vector(d: usize, kappa: Rational) -> Self {
        let id = RatMatrix::identity(d);
        let mut mats = Vec::with_capacity(d * d);
        for mu in 0..d {
            for nu in 0..d {
                let mut m = RatMatrix::unit(d, mu, nu);
                if mu == nu {
                    m = m.add(&id.scale(&kappa));
                }
                mats.push(m);
            }
        }
        GlRep { d, mats }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn size(&self) -> usize {
        self.mats.first().map(RatMatrix::size).unwrap_or(0)
    }

    /// `T^upper_lower`
    pub fn t(&self, upper: usize, lower: usize) -> &RatMatrix {
        &self.mats[upper * self.d + lower]
    }

    /// `T ⊗ I_n`, the same rep with a spectator factor on the right.
    pub fn with_spectator(&self, n: usize) -> GlRep {
        let id = RatMatrix::identity(n);
        GlRep {
            d: self.d,
            mats: self.mats.iter().map(|m| m.kron(&id)).collect(),
        }
    }

    pub fn satisfies_relations(&self) -> bool {
        let d = self.d;
        let delta = |a: usize, b: usize| if a == b { Rational::one() } else { Rational::zero() };
        for mu in 0..d {
            for rho in 0..d {
                for nu in 0..d {
                    for sigma in 0..d {
                        let lhs = self.t(mu, rho).commutator(self.t(nu, sigma));
                        let rhs = self
                            .t(mu, sigma)
                            .scale(&delta(nu, rho))
                            .sub(&self.t(nu, rho).scale(&delta(mu, sigma)));
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}
