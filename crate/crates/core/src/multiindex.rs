//! Multi-indices `m = (m_0, ..., m_{d-1})` and the jet lattice `{m : |m| <= p}`.
//!
//! Factorials and binomials are big integers; `|m|` around 20 already
//! overflows 64 bits once products of components are taken.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{JetError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(components: Vec<u32>) -> Self {
        MultiIndex(components)
    }

    pub fn zero(d: usize) -> Self {
        MultiIndex(vec![0; d])
    }

    /// The unit index in direction `mu`.
    pub fn unit(d: usize, mu: usize) -> Self {
        let mut c = vec![0; d];
        c[mu] = 1;
        MultiIndex(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, mu: usize) -> u32 {
        self.0[mu]
    }

    /// `|m|`
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    fn check_dim(&self, other: &MultiIndex) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(JetError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        self.check_dim(other)?;
        Ok(MultiIndex(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// `self - other`, defined only when `other <= self` componentwise.
    pub fn sub(&self, other: &MultiIndex) -> Result<MultiIndex> {
        self.check_dim(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .map(|(i, (a, b))| a.checked_sub(*b).ok_or(JetError::IndexUnderflow { component: i }))
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Componentwise `other <= self`.
    pub fn dominates(&self, other: &MultiIndex) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn with_incremented(&self, mu: usize) -> MultiIndex {
        let mut c = self.0.clone();
        c[mu] += 1;
        MultiIndex(c)
    }

    pub fn with_decremented(&self, mu: usize) -> Option<MultiIndex> {
        let mut c = self.0.clone();
        c[mu] = c[mu].checked_sub(1)?;
        Some(MultiIndex(c))
    }

    /// `m! = m_0! m_1! ... m_{d-1}!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&c| factorial(c as u64)).product()
    }

    /// Componentwise binomial, zero whenever some `n_mu > m_mu`.
    pub fn binomial(&self, n: &MultiIndex) -> Result<BigInt> {
        self.check_dim(n)?;
        Ok(self
            .0
            .iter()
            .zip(&n.0)
            .map(|(&m, &k)| binomial(m as u64, k as u64))
            .product())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Scalar binomial `C(n, k)`, zero-extended to `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All `m` with `|m| <= p` in graded-lexicographic order: by total order,
/// then lexicographically descending, so `(1,0)` precedes `(0,1)`.
pub fn enumerate(d: usize, p: u32) -> Result<Vec<MultiIndex>> {
    if d == 0 {
        return Err(JetError::ZeroDimension);
    }
    let mut out = Vec::new();
    for total in 0..=p {
        let mut current = vec![0u32; d];
        compositions(total, 0, &mut current, &mut out);
    }
    Ok(out)
}

fn compositions(remaining: u32, slot: usize, current: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    let d = current.len();
    if slot == d - 1 {
        current[slot] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for c in (0..=remaining).rev() {
        current[slot] = c;
        compositions(remaining - c, slot + 1, current, out);
    }
}

/// Position of `m` inside `enumerate(d, p)`, via a lookup map.
#[derive(Debug, Clone)]
pub struct JetLattice {
    d: usize,
    p: u32,
    indices: Vec<MultiIndex>,
    positions: std::collections::HashMap<MultiIndex, usize>,
}

impl JetLattice {
    pub fn new(d: usize, p: u32) -> Result<Self> {
        let indices = enumerate(d, p)?;
        let positions = indices
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(JetLattice {
            d,
            p,
            indices,
            positions,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn position(&self, m: &MultiIndex) -> Option<usize> {
        self.positions.get(m).copied()
    }
}
