use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{JetError, Result};
use crate::exactpoly::Poly;
use crate::rational::{to_display_string, Rational};

/// Dense square matrix with exact entries. Representation matrices are small.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zero(n: usize) -> Self {
        RatMatrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Matrix unit with a single one at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.set(i, j, Rational::one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(JetError::ShapeMismatch { left: n, right: r.len() });
            }
            data.extend(r);
        }
        Ok(RatMatrix { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            n: self.n,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        RatMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &RatMatrix) -> RatMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// `self ⊗ other`, with `other` as the fast index.
    pub fn kron(&self, other: &RatMatrix) -> RatMatrix {
        let (a, b) = (self.n, other.n);
        let mut out = Self::zero(a * b);
        for i in 0..a {
            for j in 0..a {
                let s = self.get(i, j);
                if s.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out.set(i * b + k, j * b + l, s * other.get(k, l));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| to_display_string(self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Sparse square matrix whose entries are polynomials in `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    qdim: usize,
    rows: Vec<BTreeMap<usize, Poly>>,
}

impl PolyMatrix {
    pub fn zero(n: usize, qdim: usize) -> Self {
        PolyMatrix {
            qdim,
            rows: vec![BTreeMap::new(); n],
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn qdim(&self) -> usize {
        self.qdim
    }

    pub fn get(&self, i: usize, j: usize) -> Poly {
        self.rows[i].get(&j).cloned().unwrap_or_else(|| Poly::zero(self.qdim))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    /// Adds `v` to entry `(i, j)`, removing it if the sum vanishes.
    pub fn add_entry(&mut self, i: usize, j: usize, v: &Poly) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[i];
        let sum = match row.get(&j) {
            Some(old) => old + v,
            None => v.clone(),
        };
        if sum.is_zero() {
            row.remove(&j);
        } else {
            row.insert(j, sum);
        }
    }

    fn check(&self, other: &PolyMatrix) -> Result<()> {
        if self.size() != other.size() {
            return Err(JetError::ShapeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        if self.qdim != other.qdim {
            return Err(JetError::DimensionMismatch {
                expected: self.qdim,
                found: other.qdim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check(other)?;
        let mut out = self.clone();
        for (i, j, v) in other.entries() {
            out.add_entry(i, j, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        self.map(|v| v.scale(c))
    }

    /// Multiplies every entry by the polynomial `f`.
    pub fn scale_poly(&self, f: &Poly) -> PolyMatrix {
        self.map(|v| v * f)
    }

    /// Entrywise `∂/∂q^mu`.
    pub fn derive(&self, mu: usize) -> PolyMatrix {
        self.map(|v| v.derive(mu))
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.size(), self.qdim);
        for (i, j, v) in self.entries() {
            out.add_entry(i, j, &f(v));
        }
        out
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check(other)?;
        let mut out = PolyMatrix::zero(self.size(), self.qdim);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    out.add_entry(i, *j, &(a * b));
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `self ⊗ r` with `r` as the fast index.
    pub fn kron_right(&self, r: &RatMatrix) -> PolyMatrix {
        let b = r.size();
        let mut out = PolyMatrix::zero(self.size() * b, self.qdim);
        for (i, j, v) in self.entries() {
            for k in 0..b {
                for l in 0..b {
                    let c = r.get(k, l);
                    if !c.is_zero() {
                        out.add_entry(i * b + k, j * b + l, &v.scale(c));
                    }
                }
            }
        }
        out
    }

    /// Substitutes a numeric `q`.
    pub fn evaluate(&self, q: &[Rational]) -> Result<RatMatrix> {
        let mut out = RatMatrix::zero(self.size());
        for (i, j, v) in self.entries() {
            out.set(i, j, v.evaluate(q)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn kron_right_matches_dense_kron() {
        let mut a = PolyMatrix::zero(2, 1);
        a.add_entry(0, 1, &Poly::constant(1, rat(2)));
        a.add_entry(1, 1, &Poly::constant(1, rat(3)));
        let r = RatMatrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(0), rat(-1)]]).unwrap();
        let dense_a = RatMatrix::from_rows(vec![vec![rat(0), rat(2)], vec![rat(0), rat(3)]]).unwrap();
        assert_eq!(a.kron_right(&r).evaluate(&[rat(0)]).unwrap(), dense_a.kron(&r));
    }

    #[test]
    fn commutator_of_units() {
        let e01 = RatMatrix::unit(2, 0, 1);
        let e10 = RatMatrix::unit(2, 1, 0);
        let h = RatMatrix::unit(2, 0, 0).sub(&RatMatrix::unit(2, 1, 1));
        assert_eq!(e01.commutator(&e10), h);
        assert_eq!(h.trace(), rat(0));
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let a = PolyMatrix::zero(2, 1);
        let b = PolyMatrix::zero(3, 1);
        assert!(matches!(a.mul(&b), Err(JetError::ShapeMismatch { left: 2, right: 3 })));
    }
}
