//! The verification sweeps behind `jetvir verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::charges::{closed_form, from_sl_gl1, scalar_traces, GRepTraces, GlRepTraces, Statistics};
use crate::cocycles::{antisymmetry_check, field_vec_from_polys, reparam_tt_cocycle, CocyclePair, REPARAM_ORIENTATION_SIGN};
use crate::deltacalc::{delta_pair_closed, delta_pair_integral, ClosedCase};
use crate::exactpoly::{LaurentPoly, LaurentVec};
use crate::jetreps::{
    bracket_diff, bracket_gauge, bracket_mixed, diff_operator, gauge_operator, lie_bracket, vector_action, GlRep,
    MatrixRep, StructureConstants,
};
use crate::jetsums::{faulty_binomial, verify_identities_with};
use crate::multiindex::binomial;
use crate::rational::{frac, rat, Rational};
use crate::sampling::{random_laurent, random_poly, random_poly_vec, random_rational};
use crate::wickcocycle::extract_charges;
use crate::Result;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub d_max: usize,
    pub p_max: u32,
    pub seed: u64,
    pub samples: usize,
    pub self_test_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            d_max: 2,
            p_max: 3,
            seed: 2024,
            samples: 4,
            self_test_fault: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    /// Failing witnesses in sweep order; the first is the minimal one.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    fn record(&mut self, outcome: Result<bool>, witness: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.check(ok, witness),
            Err(e) => self.check(false, || format!("{} ({e})", witness())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn show<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn rng_for(cfg: &VerifyConfig, suite: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(31).wrapping_add(suite))
}

pub fn sums_suite(cfg: &VerifyConfig) -> SuiteReport {
    let binom = if cfg.self_test_fault { faulty_binomial } else { binomial };
    let inner = verify_identities_with(binom, cfg.d_max, cfg.p_max);
    SuiteReport {
        name: "lattice sums",
        checks: inner.checks,
        failures: inner.failures,
    }
}

pub fn delta_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("delta products");
    let mut rng = rng_for(cfg, 1);
    for d in 1..=cfg.d_max.min(3) {
        for p in 0..=cfg.p_max {
            for _ in 0..cfg.samples {
                let f = random_poly(&mut rng, d, p + 2);
                let g = random_poly(&mut rng, d, p + 2);
                let mut cases = vec![(ClosedCase::I, 0, 0)];
                for mu in 0..d {
                    cases.push((ClosedCase::II, mu, 0));
                    for nu in 0..d {
                        cases.push((ClosedCase::III, mu, nu));
                    }
                }
                for (case, mu, nu) in cases {
                    let (d1, d2, modes) = case.oracle_setup(mu, nu);
                    let outcome = delta_pair_integral(&f, &g, d1, d2, modes, d, p)
                        .and_then(|o| Ok(o == delta_pair_closed(case, &f, &g, mu, nu, d, p)?));
                    report.record(outcome, || format!("case {case:?} d={d} p={p} mu={mu} nu={nu} f={f} g={g}"));
                }
            }
        }
    }
    report
}

/// Gauge and diffeomorphism closure, and the mixed bracket against the
/// scalar action `ξ^μ ∂_μ X` that the jet realization carries.
pub fn closure_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("classical closure");
    let mut rng = rng_for(cfg, 2);
    let so3 = (StructureConstants::so3(), MatrixRep::so3_adjoint());
    let u1 = (StructureConstants::abelian(1), MatrixRep::abelian(1));
    for d in 1..=cfg.d_max.min(2) {
        for p in 0..=cfg.p_max {
            for _ in 0..cfg.samples {
                let kappa = random_rational(&mut rng);
                let gl = GlRep::vector(d, kappa.clone());
                let xi = random_poly_vec(&mut rng, d, d, 3);
                let eta = random_poly_vec(&mut rng, d, d, 3);
                let outcome = (|| {
                    let lhs = bracket_diff(&diff_operator(&xi, &gl, p)?, &diff_operator(&eta, &gl, p)?)?;
                    Ok(lhs == diff_operator(&lie_bracket(&xi, &eta)?, &gl, p)?)
                })();
                report.record(outcome, || format!("diffeo d={d} p={p} kappa={kappa} xi=[{}] eta=[{}]", show(&xi), show(&eta)));

                for (f, rep) in [&u1, &so3] {
                    let x = random_poly_vec(&mut rng, d, f.dim(), p + 1);
                    let y = random_poly_vec(&mut rng, d, f.dim(), p + 1);
                    let outcome = (|| {
                        let lhs = bracket_gauge(&gauge_operator(&x, rep, d, p)?, &gauge_operator(&y, rep, d, p)?)?;
                        Ok(lhs == gauge_operator(&f.bracket(&x, &y)?, rep, d, p)?)
                    })();
                    report.record(outcome, || format!("gauge dim g={} d={d} p={p} X=[{}] Y=[{}]", f.dim(), show(&x), show(&y)));

                    let glm = gl.with_spectator(rep.size());
                    let repm = rep.with_spectator(gl.size());
                    let outcome = (|| {
                        let lhs = bracket_mixed(&diff_operator(&xi, &glm, p)?, &gauge_operator(&x, &repm, d, p)?)?;
                        Ok(lhs == gauge_operator(&vector_action(&xi, &x)?, &repm, d, p)?)
                    })();
                    report.record(outcome, || format!("mixed dim g={} d={d} p={p} xi=[{}] X=[{}]", f.dim(), show(&xi), show(&x)));
                }
            }
        }
    }
    report
}

/// Three trace tuples; the last two have `zM` and `wM` nonzero.
pub fn trace_tuples(d: usize, statistics: Statistics) -> Result<Vec<(GlRepTraces, GRepTraces)>> {
    Ok(vec![
        (scalar_traces(d), GRepTraces::new(1, rat(1), rat(0), rat(0), statistics)?),
        (
            from_sl_gl1(frac(-1, 2), rat(3), 2, d)?,
            GRepTraces::new(2, rat(3), frac(1, 2), rat(-2), statistics)?,
        ),
        (
            GlRepTraces::new(3, rat(2), frac(1, 3), rat(-1))?,
            GRepTraces::new(3, rat(-1), rat(2), frac(5, 2), statistics)?,
        ),
    ])
}

pub fn charge_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut points = Vec::new();
    for d in 1..=cfg.d_max.min(3) {
        for p in 0..=cfg.p_max {
            for lambda in [rat(0), frac(1, 2), rat(1), rat(2)] {
                for st in [Statistics::Bose, Statistics::Fermi] {
                    for tuple in 0..3 {
                        points.push((d, p, lambda.clone(), st, tuple));
                    }
                }
            }
        }
    }
    let results: Vec<(usize, Vec<String>)> = points
        .par_iter()
        .map(|(d, p, lambda, st, tuple)| {
            let witness = |what: String| format!("{what} d={d} p={p} lambda={lambda} statistics={st} tuple={tuple}");
            let outcome = (|| -> Result<_> {
                let (gl, g) = trace_tuples(*d, *st)?.swap_remove(*tuple);
                let measured = extract_charges(*d, *p, lambda, &gl, &g)?;
                let closed = closed_form(*d, *p, lambda, &gl, &g)?;
                Ok(measured.compare(&closed))
            })();
            match outcome {
                Ok(rows) => {
                    let bad = rows
                        .iter()
                        .filter(|c| !c.matches())
                        .map(|c| witness(format!("{}: closed {} measured {}", c.name, c.closed, c.measured)))
                        .collect();
                    (rows.len(), bad)
                }
                Err(e) => (1, vec![witness(format!("engine error: {e}"))]),
            }
        })
        .collect();
    let mut report = SuiteReport::new("charge reproduction");
    for (checks, failures) in results {
        report.checks += checks;
        report.failures.extend(failures);
    }
    report
}

pub fn cocycle_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new("cocycle antisymmetry");
    let mut rng = rng_for(cfg, 4);
    for d in 1..=cfg.d_max.min(2) {
        for _ in 0..cfg.samples.max(1) * 2 {
            let q = LaurentVec::new((0..d).map(|_| random_laurent(&mut rng, -2, 2)).collect());
            let pairs = [
                CocyclePair::Virasoro {
                    xi: field_vec_from_polys(&random_poly_vec(&mut rng, d, d, 2)),
                    eta: field_vec_from_polys(&random_poly_vec(&mut rng, d, d, 2)),
                    c1: random_rational(&mut rng),
                    c2: random_rational(&mut rng),
                },
                CocyclePair::Affine {
                    x: field_vec_from_polys(&random_poly_vec(&mut rng, d, 2, 2)),
                    y: field_vec_from_polys(&random_poly_vec(&mut rng, d, 2, 2)),
                    c5: random_rational(&mut rng),
                    c8: random_rational(&mut rng),
                },
            ];
            for pair in &pairs {
                let outcome = antisymmetry_check(pair, &q).map(|r| r.passed());
                report.record(outcome, || {
                    let (kind, a, b) = match pair {
                        CocyclePair::Virasoro { xi, eta, .. } => ("virasoro", show(xi), show(eta)),
                        CocyclePair::Affine { x, y, .. } => ("affine", show(x), show(y)),
                    };
                    format!("{kind} d={d} q=[{q}] a=[{a}] b=[{b}]")
                });
            }
        }
    }
    let c4: Rational = rat(rng.gen_range(1..=24));
    for m in -4i64..=4 {
        let f = LaurentPoly::monomial(rat(1), m + 1);
        let g = LaurentPoly::monomial(rat(1), 1 - m);
        let expected = rat(REPARAM_ORIENTATION_SIGN) * -(&c4 / rat(12)) * rat(m * m * m - m);
        report.check(reparam_tt_cocycle(&f, &g, &c4) == expected, || format!("reparametrization m={m} c4={c4}"));
    }
    report
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    vec![
        sums_suite(cfg),
        delta_suite(cfg),
        closure_suite(cfg),
        charge_suite(cfg),
        cocycle_suite(cfg),
    ]
}
