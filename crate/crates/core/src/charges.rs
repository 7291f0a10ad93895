//! Closed-form abelian charges `c1`..`c8` and the representation trace data
//! they depend on.
//!
//! With `A..E` the lattice sums at `(d, p)` and `±` the statistics sign
//! (upper sign bosonic):
//!
//! ```text
//! c1 = 1 ± ΔM (E Δρ + A k1)
//! c2 = ± ΔM (D Δρ + 2 B k0 + A k2)
//! c3 = 1 ± (2λ-1) ΔM (B Δρ + A k0)
//! c4 = 2d ± 2(6λ²-6λ+1) A Δρ ΔM
//! c5 = ∓ A yM Δρ
//! c6 = ± (2λ-1) zM A Δρ
//! c7 = ∓ zM (B Δρ + A k0)
//! c8 = ∓ wM A Δρ
//! ```

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{JetError, Result};
use crate::jetsums::closed_value;
use crate::rational::{from_big, rat, serde_exact, serde_exact_opt, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    #[default]
    Bose,
    Fermi,
}

impl Statistics {
    /// The upper sign of `±`: `+1` for bosons, `-1` for fermions.
    pub fn sign(&self) -> Rational {
        match self {
            Statistics::Bose => Rational::one(),
            Statistics::Fermi => -Rational::one(),
        }
    }

    pub fn flipped(&self) -> Statistics {
        match self {
            Statistics::Bose => Statistics::Fermi,
            Statistics::Fermi => Statistics::Bose,
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistics::Bose => "bose",
            Statistics::Fermi => "fermi",
        })
    }
}

impl FromStr for Statistics {
    type Err = JetError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bose" | "boson" | "bosonic" => Ok(Statistics::Bose),
            "fermi" | "fermion" | "fermionic" => Ok(Statistics::Fermi),
            other => Err(JetError::InvalidParameter(format!("unknown statistics {other:?}"))),
        }
    }
}

/// Traces of the `gl(d)` representation `ρ`:
/// `tr 1 = Δρ`, `tr T^μ_ν = k0 δ^μ_ν`,
/// `tr T^μ_ν T^σ_τ = k1 δ^μ_τ δ^σ_ν + k2 δ^μ_ν δ^σ_τ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlRepTraces {
    pub delta_rho: u32,
    #[serde(with = "serde_exact")]
    pub k0: Rational,
    #[serde(with = "serde_exact")]
    pub k1: Rational,
    #[serde(with = "serde_exact")]
    pub k2: Rational,
    /// Density weight, when built from the `sl(d) ⊕ gl(1)` data.
    #[serde(with = "serde_exact_opt", default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Rational>,
    #[serde(with = "serde_exact_opt", default, skip_serializing_if = "Option::is_none")]
    pub y_rho: Option<Rational>,
}

impl GlRepTraces {
    pub fn new(delta_rho: u32, k0: Rational, k1: Rational, k2: Rational) -> Result<Self> {
        if delta_rho == 0 {
            return Err(JetError::InvalidParameter("delta_rho must be at least 1".into()));
        }
        Ok(GlRepTraces {
            delta_rho,
            k0,
            k1,
            k2,
            kappa: None,
            y_rho: None,
        })
    }

    pub fn delta(&self) -> Rational {
        rat(self.delta_rho.into())
    }
}

/// `k0 = κΔρ`, `k1 = yρ`, `k2 = κ²Δρ - yρ/d`.
pub fn from_sl_gl1(kappa: Rational, y_rho: Rational, delta_rho: u32, d: usize) -> Result<GlRepTraces> {
    if d == 0 {
        return Err(JetError::ZeroDimension);
    }
    let dr = rat(delta_rho.into());
    let k0 = &kappa * &dr;
    let k2 = &kappa * &kappa * &dr - &y_rho / rat(d as i64);
    let mut t = GlRepTraces::new(delta_rho, k0, y_rho.clone(), k2)?;
    t.kappa = Some(kappa);
    t.y_rho = Some(y_rho);
    Ok(t)
}

/// Traces of the `g` representation `M`:
/// `tr 1 = ΔM`, `tr M^a = zM δ^a`, `tr M^a M^b = yM δ^{ab} + wM δ^a δ^b`,
/// where `δ^a` selects the privileged direction `a = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GRepTraces {
    pub delta_m: u32,
    #[serde(with = "serde_exact")]
    pub y_m: Rational,
    #[serde(with = "serde_exact")]
    pub z_m: Rational,
    #[serde(with = "serde_exact")]
    pub w_m: Rational,
    pub statistics: Statistics,
}

impl GRepTraces {
    pub fn new(delta_m: u32, y_m: Rational, z_m: Rational, w_m: Rational, statistics: Statistics) -> Result<Self> {
        if delta_m == 0 {
            return Err(JetError::InvalidParameter("delta_m must be at least 1".into()));
        }
        Ok(GRepTraces {
            delta_m,
            y_m,
            z_m,
            w_m,
            statistics,
        })
    }

    pub fn delta(&self) -> Rational {
        rat(self.delta_m.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeInputs {
    pub d: usize,
    pub p: u32,
    /// Conformal weight of the reparametrization generator.
    #[serde(with = "serde_exact")]
    pub lambda: Rational,
    #[serde(with = "serde_exact_opt", default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Rational>,
    #[serde(with = "serde_exact_opt", default, skip_serializing_if = "Option::is_none")]
    pub y_rho: Option<Rational>,
    pub delta_rho: u32,
    #[serde(with = "serde_exact")]
    pub k0: Rational,
    #[serde(with = "serde_exact")]
    pub k1: Rational,
    #[serde(with = "serde_exact")]
    pub k2: Rational,
    pub delta_m: u32,
    #[serde(with = "serde_exact")]
    pub y_m: Rational,
    #[serde(with = "serde_exact")]
    pub z_m: Rational,
    #[serde(with = "serde_exact")]
    pub w_m: Rational,
    pub statistics: Statistics,
}

impl ChargeInputs {
    pub fn new(d: usize, p: u32, lambda: Rational, gl: &GlRepTraces, g: &GRepTraces) -> Self {
        ChargeInputs {
            d,
            p,
            lambda,
            kappa: gl.kappa.clone(),
            y_rho: gl.y_rho.clone(),
            delta_rho: gl.delta_rho,
            k0: gl.k0.clone(),
            k1: gl.k1.clone(),
            k2: gl.k2.clone(),
            delta_m: g.delta_m,
            y_m: g.y_m.clone(),
            z_m: g.z_m.clone(),
            w_m: g.w_m.clone(),
            statistics: g.statistics,
        }
    }

    pub fn gl(&self) -> GlRepTraces {
        GlRepTraces {
            delta_rho: self.delta_rho,
            k0: self.k0.clone(),
            k1: self.k1.clone(),
            k2: self.k2.clone(),
            kappa: self.kappa.clone(),
            y_rho: self.y_rho.clone(),
        }
    }

    pub fn g(&self) -> GRepTraces {
        GRepTraces {
            delta_m: self.delta_m,
            y_m: self.y_m.clone(),
            z_m: self.z_m.clone(),
            w_m: self.w_m.clone(),
            statistics: self.statistics,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Charges {
    #[serde(with = "serde_exact")]
    pub c1: Rational,
    #[serde(with = "serde_exact")]
    pub c2: Rational,
    #[serde(with = "serde_exact")]
    pub c3: Rational,
    #[serde(with = "serde_exact")]
    pub c4: Rational,
    #[serde(with = "serde_exact")]
    pub c5: Rational,
    #[serde(with = "serde_exact")]
    pub c6: Rational,
    #[serde(with = "serde_exact")]
    pub c7: Rational,
    #[serde(with = "serde_exact")]
    pub c8: Rational,
}

impl Charges {
    /// `(name, value)` pairs in order.
    pub fn named(&self) -> [(&'static str, &Rational); 8] {
        [
            ("c1", &self.c1),
            ("c2", &self.c2),
            ("c3", &self.c3),
            ("c4", &self.c4),
            ("c5", &self.c5),
            ("c6", &self.c6),
            ("c7", &self.c7),
            ("c8", &self.c8),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeSet {
    pub inputs: ChargeInputs,
    pub charges: Charges,
}

impl ChargeSet {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("charge sets always serialize")
    }

    pub fn from_json(s: &str) -> Result<ChargeSet> {
        serde_json::from_str(s).map_err(|e| JetError::InvalidParameter(format!("bad charge JSON: {e}")))
    }
}

/// Field-sector pieces of the charges, without the constants `1`, `1`, `2d`
/// that come from the observer's own degrees of freedom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldParts {
    pub c1: Rational,
    pub c2: Rational,
    pub c3: Rational,
    pub c4: Rational,
    pub c5: Rational,
    pub c6: Rational,
    pub c7: Rational,
    pub c8: Rational,
}

pub fn field_parts(d: usize, p: u32, lambda: &Rational, gl: &GlRepTraces, g: &GRepTraces) -> Result<FieldParts> {
    if d == 0 {
        return Err(JetError::ZeroDimension);
    }
    let s = g.statistics.sign();
    let sum = |tag| from_big(closed_value(tag, d, p));
    let (a, b, dd, e) = (sum('A'), sum('B'), sum('D'), sum('E'));
    let (dr, dm) = (gl.delta(), g.delta());
    let two_l = rat(2) * lambda - rat(1);
    let quad = rat(6) * lambda * lambda - rat(6) * lambda + rat(1);
    let b_block = &b * &dr + &a * &gl.k0;
    Ok(FieldParts {
        c1: &s * &dm * (&e * &dr + &a * &gl.k1),
        c2: &s * &dm * (&dd * &dr + rat(2) * &b * &gl.k0 + &a * &gl.k2),
        c3: &s * &two_l * &dm * &b_block,
        c4: &s * rat(2) * &quad * &a * &dr * &dm,
        c5: -&s * &a * &g.y_m * &dr,
        c6: &s * &two_l * &g.z_m * &a * &dr,
        c7: -&s * &g.z_m * &b_block,
        c8: -&s * &g.w_m * &a * &dr,
    })
}

pub fn closed_form(d: usize, p: u32, lambda: &Rational, gl: &GlRepTraces, g: &GRepTraces) -> Result<ChargeSet> {
    let f = field_parts(d, p, lambda, gl, g)?;
    Ok(ChargeSet {
        inputs: ChargeInputs::new(d, p, lambda.clone(), gl, g),
        charges: Charges {
            c1: Rational::one() + f.c1,
            c2: f.c2,
            c3: Rational::one() + f.c3,
            c4: rat(2 * d as i64) + f.c4,
            c5: f.c5,
            c6: f.c6,
            c7: f.c7,
            c8: f.c8,
        },
    })
}

/// `k = ∓ (p+1) yM`, the level of the affine algebra that `Aff(1, g)`
/// reduces to at `d = 1`.
pub fn kac_moody_level(p: u32, y_m: &Rational, statistics: Statistics) -> Rational {
    -statistics.sign() * rat(i64::from(p) + 1) * y_m
}

/// The scalar field: `κ = yρ = 0`, `Δρ = 1`.
pub fn scalar_traces(d: usize) -> GlRepTraces {
    from_sl_gl1(Rational::zero(), Rational::zero(), 1, d).expect("d >= 1")
}
