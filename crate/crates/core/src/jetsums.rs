//! The five lattice sums over `{m : |m| <= p}`:
//!
//! | kind | summand          | closed form                          |
//! |------|------------------|--------------------------------------|
//! | A    | 1                | C(d+p, d)                            |
//! | B    | m_mu             | C(d+p, d+1)                          |
//! | C    | m_mu^2           | C(d+p, d+2) + C(d+p+1, d+2)          |
//! | D    | m_mu m_nu        | C(d+p, d+2), mu != nu                |
//! | E    | m_mu (m_nu + 1)  | C(d+p+1, d+2), mu != nu              |

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{JetError, Result};
use crate::multiindex::{binomial, enumerate};

/// Binomial used by the closed forms. Swappable so the verification harness
/// can inject a fault.
pub type BinomialFn = fn(u64, u64) -> BigInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumKind {
    A,
    B { mu: usize },
    C { mu: usize },
    D { mu: usize, nu: usize },
    E { mu: usize, nu: usize },
}

impl SumKind {
    pub fn tag(&self) -> char {
        match self {
            SumKind::A => 'A',
            SumKind::B { .. } => 'B',
            SumKind::C { .. } => 'C',
            SumKind::D { .. } => 'D',
            SumKind::E { .. } => 'E',
        }
    }

    fn validate(&self, d: usize) -> Result<()> {
        if d == 0 {
            return Err(JetError::ZeroDimension);
        }
        let check = |direction: usize| {
            if direction >= d {
                Err(JetError::InvalidDirection { direction, dim: d })
            } else {
                Ok(())
            }
        };
        match *self {
            SumKind::A => Ok(()),
            SumKind::B { mu } | SumKind::C { mu } => check(mu),
            SumKind::D { mu, nu } | SumKind::E { mu, nu } => {
                check(mu)?;
                check(nu)?;
                if mu == nu {
                    let kind = if self.tag() == 'D' { "D" } else { "E" };
                    return Err(JetError::CoincidentDirections { kind, mu });
                }
                Ok(())
            }
        }
    }

    /// Every kind with every admissible direction choice in dimension `d`.
    pub fn all(d: usize) -> Vec<SumKind> {
        let mut out = vec![SumKind::A];
        for mu in 0..d {
            out.push(SumKind::B { mu });
            out.push(SumKind::C { mu });
        }
        for mu in 0..d {
            for nu in 0..d {
                if mu != nu {
                    out.push(SumKind::D { mu, nu });
                    out.push(SumKind::E { mu, nu });
                }
            }
        }
        out
    }
}

impl fmt::Display for SumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SumKind::A => write!(f, "A"),
            SumKind::B { mu } => write!(f, "B[{mu}]"),
            SumKind::C { mu } => write!(f, "C[{mu}]"),
            SumKind::D { mu, nu } => write!(f, "D[{mu},{nu}]"),
            SumKind::E { mu, nu } => write!(f, "E[{mu},{nu}]"),
        }
    }
}

pub fn sum_closed(kind: SumKind, d: usize, p: u32) -> Result<BigInt> {
    sum_closed_with(binomial, kind, d, p)
}

pub fn sum_closed_with(binom: BinomialFn, kind: SumKind, d: usize, p: u32) -> Result<BigInt> {
    kind.validate(d)?;
    let (d, p) = (d as u64, p as u64);
    Ok(match kind {
        SumKind::A => binom(d + p, d),
        SumKind::B { .. } => binom(d + p, d + 1),
        SumKind::C { .. } => binom(d + p, d + 2) + binom(d + p + 1, d + 2),
        SumKind::D { .. } => binom(d + p, d + 2),
        SumKind::E { .. } => binom(d + p + 1, d + 2),
    })
}

pub fn sum_brute(kind: SumKind, d: usize, p: u32) -> Result<BigInt> {
    kind.validate(d)?;
    let mut total = BigInt::zero();
    for m in enumerate(d, p)? {
        let c = |mu: usize| BigInt::from(m.get(mu));
        total += match kind {
            SumKind::A => BigInt::from(1),
            SumKind::B { mu } => c(mu),
            SumKind::C { mu } => c(mu) * c(mu),
            SumKind::D { mu, nu } => c(mu) * c(nu),
            SumKind::E { mu, nu } => c(mu) * (c(nu) + 1),
        };
    }
    Ok(total)
}

/// Closed-form value of a kind at `(d, p)` independent of the directions,
/// for use in other modules. `D`/`E` need `d >= 2` to have a direction pair;
/// their closed forms are still meaningful at `d = 1` and are returned here.
pub fn closed_value(tag: char, d: usize, p: u32) -> BigInt {
    let (d, p) = (d as u64, p as u64);
    match tag {
        'A' => binomial(d + p, d),
        'B' => binomial(d + p, d + 1),
        'C' => binomial(d + p, d + 2) + binomial(d + p + 1, d + 2),
        'D' => binomial(d + p, d + 2),
        'E' => binomial(d + p + 1, d + 2),
        other => panic!("unknown sum kind {other}"),
    }
}

#[derive(Debug, Clone, Default)]
pub struct IdentityReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(witness());
        }
    }
}

/// Binomial that is off by one at `C(4, 2)`; drives the harness self-test.
pub fn faulty_binomial(n: u64, k: u64) -> BigInt {
    let b = binomial(n, k);
    if (n, k) == (4, 2) {
        b + 1
    } else {
        b
    }
}

pub fn verify_identities(d_max: usize, p_max: u32) -> IdentityReport {
    verify_identities_with(binomial, d_max, p_max)
}

/// Closed equals brute for every kind and direction pair, plus `E = D + B`,
/// `C = E + D` and the recursion `B(d,p) = B(d,p-1) + C(d+p-1, d)`.
pub fn verify_identities_with(binom: BinomialFn, d_max: usize, p_max: u32) -> IdentityReport {
    let mut report = IdentityReport::default();
    for d in 1..=d_max {
        for p in 0..=p_max {
            for kind in SumKind::all(d) {
                let closed = sum_closed_with(binom, kind, d, p).expect("valid kind");
                let brute = sum_brute(kind, d, p).expect("valid kind");
                report.check(closed == brute, || {
                    format!("{kind} d={d} p={p}: closed {closed} != brute {brute}")
                });
            }
            // direction independence
            let reference: Vec<(char, BigInt)> = SumKind::all(d)
                .into_iter()
                .map(|k| (k.tag(), sum_brute(k, d, p).expect("valid")))
                .collect();
            for tag in ['B', 'C', 'D', 'E'] {
                let vals: Vec<&BigInt> = reference
                    .iter()
                    .filter(|(t, _)| *t == tag)
                    .map(|(_, v)| v)
                    .collect();
                report.check(vals.windows(2).all(|w| w[0] == w[1]), || {
                    format!("{tag} d={d} p={p}: depends on direction choice")
                });
            }
            let b = sum_closed_with(binom, SumKind::B { mu: 0 }, d, p).expect("valid");
            if p > 0 {
                let prev = sum_closed_with(binom, SumKind::B { mu: 0 }, d, p - 1).expect("valid");
                let step = binom(d as u64 + p as u64 - 1, d as u64);
                report.check(b == &prev + &step, || {
                    format!("B recursion d={d} p={p}: {b} != {prev} + {step}")
                });
            }
            if d >= 2 {
                let dk = SumKind::D { mu: 0, nu: 1 };
                let ek = SumKind::E { mu: 0, nu: 1 };
                let dv = sum_closed_with(binom, dk, d, p).expect("valid");
                let ev = sum_closed_with(binom, ek, d, p).expect("valid");
                let cv = sum_closed_with(binom, SumKind::C { mu: 0 }, d, p).expect("valid");
                report.check(ev == &dv + &b, || format!("E != D + B at d={d} p={p}"));
                report.check(cv == &ev + &dv, || format!("C != E + D at d={d} p={p}"));
                let dswap = sum_brute(SumKind::D { mu: 1, nu: 0 }, d, p).expect("valid");
                report.check(dswap == dv, || format!("D not symmetric at d={d} p={p}"));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn closed_examples() {
        assert_eq!(sum_closed(SumKind::A, 1, 3).unwrap(), big(4));
        assert_eq!(sum_closed(SumKind::B { mu: 0 }, 1, 3).unwrap(), big(6));
        assert_eq!(sum_closed(SumKind::C { mu: 0 }, 1, 2).unwrap(), big(5));
    }

    #[test]
    fn low_dimensional_hand_formulas() {
        // d = 1: A = p+1, B = p(p+1)/2, C = (p + 3p^2 + 2p^3)/6
        for p in 0..10i64 {
            let pu = p as u32;
            assert_eq!(sum_closed(SumKind::A, 1, pu).unwrap(), big(p + 1));
            assert_eq!(sum_closed(SumKind::B { mu: 0 }, 1, pu).unwrap(), big(p * (p + 1) / 2));
            assert_eq!(
                sum_closed(SumKind::C { mu: 0 }, 1, pu).unwrap(),
                big((p + 3 * p * p + 2 * p * p * p) / 6)
            );
        }
    }

    #[test]
    fn brute_examples() {
        assert_eq!(sum_brute(SumKind::B { mu: 0 }, 2, 2).unwrap(), big(4));
        assert_eq!(sum_brute(SumKind::D { mu: 0, nu: 1 }, 2, 2).unwrap(), big(1));
        assert_eq!(sum_brute(SumKind::E { mu: 0, nu: 1 }, 2, 2).unwrap(), big(5));
    }

    #[test]
    fn rejects_bad_directions() {
        assert!(matches!(
            sum_closed(SumKind::D { mu: 1, nu: 1 }, 3, 2),
            Err(JetError::CoincidentDirections { kind: "D", mu: 1 })
        ));
        assert!(matches!(
            sum_brute(SumKind::E { mu: 0, nu: 0 }, 2, 2),
            Err(JetError::CoincidentDirections { kind: "E", .. })
        ));
        assert!(matches!(
            sum_closed(SumKind::B { mu: 2 }, 2, 1),
            Err(JetError::InvalidDirection { direction: 2, dim: 2 })
        ));
        assert_eq!(sum_closed(SumKind::A, 0, 1), Err(JetError::ZeroDimension));
    }

    #[test]
    fn identity_sweeps() {
        let r = verify_identities(3, 5);
        assert!(r.passed(), "{:?}", r.failures);
        let r = verify_identities(1, 0);
        assert!(r.passed());
        for kind in [SumKind::B { mu: 0 }, SumKind::C { mu: 0 }] {
            assert_eq!(sum_closed(kind, 1, 0).unwrap(), big(0));
        }
        assert_eq!(sum_closed(SumKind::A, 1, 0).unwrap(), big(1));
        assert_eq!(closed_value('D', 1, 0), big(0));
        assert_eq!(closed_value('E', 1, 0), big(0));
    }

    #[test]
    fn faulty_binomial_is_caught() {
        assert!(!verify_identities_with(faulty_binomial, 2, 3).passed());
        assert!(verify_identities(2, 3).passed());
    }
}
