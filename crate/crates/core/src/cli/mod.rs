//! Command-line front end for `jetvir`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

pub mod verify;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::charges::{closed_form, from_sl_gl1, ChargeSet, GRepTraces, GlRepTraces, Statistics};
use crate::cocycles::{
    affine_cocycle, mixed_cocycle, parse_field_vec, reparam_gauge_cocycle, reparam_tt_cocycle, reparam_vector_cocycle,
    virasoro_cocycle, LaurentField,
};
use crate::error::JetError;
use crate::exactpoly::{LaurentPoly, LaurentVec};
use crate::jetsums::{sum_brute, sum_closed, SumKind};
use crate::rational::{parse_rational, to_display_string, to_exact_string, Rational};
use crate::wickcocycle::{extract_charges, MeasuredCharges};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const D_LIMIT: usize = 6;
const P_LIMIT: u32 = 10;

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s:?}"))
}

fn statistics_arg(s: &str) -> std::result::Result<Statistics, String> {
    s.parse().map_err(|e: JetError| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "jetvir", version, about = "Exact p-jet calculus and the abelian charges of the multi-dimensional Virasoro extension")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form charges c1..c8, optionally measured by double contraction.
    Charges(ChargesArgs),
    /// Run every verification sweep.
    Verify(VerifyArgs),
    /// Lattice sums A..E, closed form next to enumeration.
    Sums(SumsArgs),
    /// Evaluate one residue-form cocycle.
    Cocycle(CocycleArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct ChargesArgs {
    #[arg(long = "d")]
    d: usize,
    #[arg(long = "p")]
    p: u32,
    #[arg(long, value_parser = rational_arg, default_value = "0", allow_hyphen_values = true)]
    lambda: Rational,
    /// Density weight; with --y-rho gives k0, k1, k2.
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    kappa: Option<Rational>,
    #[arg(long = "y-rho", value_parser = rational_arg, allow_hyphen_values = true)]
    y_rho: Option<Rational>,
    #[arg(long = "delta-rho", default_value_t = 1)]
    delta_rho: u32,
    /// Explicit gl(d) traces; all three replace --kappa/--y-rho.
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    k0: Option<Rational>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    k1: Option<Rational>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    k2: Option<Rational>,
    #[arg(long = "delta-m", default_value_t = 1)]
    delta_m: u32,
    #[arg(long = "y-m", value_parser = rational_arg, default_value = "1", allow_hyphen_values = true)]
    y_m: Rational,
    #[arg(long = "z-m", value_parser = rational_arg, default_value = "0", allow_hyphen_values = true)]
    z_m: Rational,
    #[arg(long = "w-m", value_parser = rational_arg, default_value = "0", allow_hyphen_values = true)]
    w_m: Rational,
    #[arg(long, value_parser = statistics_arg, default_value = "bose")]
    statistics: Statistics,
    /// Also run the contraction engine and compare.
    #[arg(long)]
    measure: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long = "d-max", default_value_t = 2)]
    d_max: usize,
    #[arg(long = "p-max", default_value_t = 3)]
    p_max: u32,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Random samples per grid point.
    #[arg(long, default_value_t = 4)]
    samples: usize,
    /// Replace one binomial coefficient by a wrong value; must fail.
    #[arg(long = "self-test-fault")]
    self_test_fault: bool,
}

#[derive(Args, Debug)]
struct SumsArgs {
    #[arg(long = "d")]
    d: usize,
    #[arg(long = "p")]
    p: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CocycleKind {
    Virasoro,
    Affine,
    Mixed,
    ReparamTt,
    ReparamVector,
    ReparamGauge,
}

#[derive(Args, Debug)]
struct CocycleArgs {
    #[arg(long, value_enum)]
    kind: CocycleKind,
    #[arg(long = "d", default_value_t = 1)]
    d: usize,
    /// Trajectory q(z), one Laurent polynomial per component.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    traj: String,
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    /// Gauge function X, comma-separated components.
    #[arg(long = "x", allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long = "y", allow_hyphen_values = true)]
    y: Option<String>,
    /// Reparametrization f(z).
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long, value_parser = rational_arg, default_value = "0", allow_hyphen_values = true)]
    c1: Rational,
    #[arg(long, value_parser = rational_arg, default_value = "0", allow_hyphen_values = true)]
    c2: Rational,
    #[arg(long, value_parser = rational_arg, default_value = "0", allow_hyphen_values = true)]
    c3: Rational,
    #[arg(long, value_parser = rational_arg, default_value = "0", allow_hyphen_values = true)]
    c4: Rational,
    #[arg(long, value_parser = rational_arg, default_value = "0", allow_hyphen_values = true)]
    c5: Rational,
    #[arg(long, value_parser = rational_arg, default_value = "0", allow_hyphen_values = true)]
    c6: Rational,
    #[arg(long, value_parser = rational_arg, default_value = "0", allow_hyphen_values = true)]
    c7: Rational,
    #[arg(long, value_parser = rational_arg, default_value = "0", allow_hyphen_values = true)]
    c8: Rational,
}

/// Failure modes of a command, mapped onto exit codes.
enum Failure {
    Usage(String),
    Verification,
}

impl From<JetError> for Failure {
    fn from(e: JetError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("output error: {e}"))
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Charges(a) => cmd_charges(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Sums(a) => cmd_sums(&a, out),
        Command::Cocycle(a) => cmd_cocycle(&a, out),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Verification) => EXIT_FAILURE,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn check_ranges(d: usize, p: u32) -> CmdResult {
    if d == 0 || d > D_LIMIT {
        return Err(Failure::Usage(format!("--d must lie in 1..={D_LIMIT}")));
    }
    if p > P_LIMIT {
        return Err(Failure::Usage(format!("--p must lie in 0..={P_LIMIT}")));
    }
    Ok(())
}

fn gl_traces(a: &ChargesArgs) -> std::result::Result<GlRepTraces, Failure> {
    match (&a.k0, &a.k1, &a.k2) {
        (Some(k0), Some(k1), Some(k2)) => {
            if a.kappa.is_some() || a.y_rho.is_some() {
                return Err(Failure::Usage("give either --k0/--k1/--k2 or --kappa/--y-rho, not both".into()));
            }
            Ok(GlRepTraces::new(a.delta_rho, k0.clone(), k1.clone(), k2.clone())?)
        }
        (None, None, None) => Ok(from_sl_gl1(
            a.kappa.clone().unwrap_or_default(),
            a.y_rho.clone().unwrap_or_default(),
            a.delta_rho,
            a.d,
        )?),
        _ => Err(Failure::Usage("--k0, --k1 and --k2 must be given together".into())),
    }
}

struct ChargeRow {
    name: &'static str,
    closed: Rational,
    measured: Option<Option<Rational>>,
}

impl ChargeRow {
    fn matches(&self) -> Option<bool> {
        match &self.measured {
            Some(Some(m)) => Some(*m == self.closed),
            _ => None,
        }
    }
}

fn charge_rows(set: &ChargeSet, measured: Option<&MeasuredCharges>) -> Vec<ChargeRow> {
    let compared = measured.map(|m| m.compare(set));
    let lookup = |name: &str| -> Option<Option<Rational>> {
        compared
            .as_ref()
            .map(|rows| rows.iter().find(|r| r.name == name).map(|r| r.measured.clone()))
    };
    let mut rows: Vec<ChargeRow> = set
        .charges
        .named()
        .into_iter()
        .map(|(name, v)| ChargeRow {
            name,
            closed: v.clone(),
            measured: lookup(name),
        })
        .collect();
    if let Some(m) = measured {
        if m.c1.is_none() {
            rows.insert(
                2,
                ChargeRow {
                    name: "c1+c2",
                    closed: &set.charges.c1 + &set.charges.c2,
                    measured: Some(Some(m.c1_plus_c2.clone())),
                },
            );
        }
    }
    rows
}

fn cmd_charges(a: &ChargesArgs, out: &mut dyn Write) -> CmdResult {
    check_ranges(a.d, a.p)?;
    let gl = gl_traces(a)?;
    let g = GRepTraces::new(a.delta_m, a.y_m.clone(), a.z_m.clone(), a.w_m.clone(), a.statistics)?;
    let set = closed_form(a.d, a.p, &a.lambda, &gl, &g)?;
    let measured = if a.measure {
        Some(extract_charges(a.d, a.p, &a.lambda, &gl, &g)?)
    } else {
        None
    };
    let rows = charge_rows(&set, measured.as_ref());
    let all_match = rows.iter().all(|r| r.matches() != Some(false));
    match a.format {
        Format::Json => {
            let mut value: Value = serde_json::from_str(&set.to_json()).map_err(|e| Failure::Usage(e.to_string()))?;
            if a.measure {
                let mut m = Map::new();
                for r in &rows {
                    let v = match &r.measured {
                        Some(Some(x)) => Value::String(to_exact_string(x)),
                        _ => Value::Null,
                    };
                    m.insert(r.name.to_string(), v);
                }
                value["measured"] = Value::Object(m);
                value["all_match"] = json!(all_match);
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&value).map_err(|e| Failure::Usage(e.to_string()))?)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let header: &[&str] = if a.measure { &["charge", "closed", "measured", "match"] } else { &["charge", "closed"] };
            w.write_record(header).map_err(csv_error)?;
            for r in &rows {
                let mut rec = vec![r.name.to_string(), to_exact_string(&r.closed)];
                if a.measure {
                    rec.push(measured_text(r, to_exact_string));
                    rec.push(match_text(r).to_string());
                }
                w.write_record(&rec).map_err(csv_error)?;
            }
            out.write_all(&w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?)?;
        }
        Format::Text => {
            let i = &set.inputs;
            writeln!(
                out,
                "d={} p={} lambda={} statistics={} delta_rho={} k0={} k1={} k2={} delta_m={} y_m={} z_m={} w_m={}",
                i.d,
                i.p,
                to_display_string(&i.lambda),
                i.statistics,
                i.delta_rho,
                to_display_string(&i.k0),
                to_display_string(&i.k1),
                to_display_string(&i.k2),
                i.delta_m,
                to_display_string(&i.y_m),
                to_display_string(&i.z_m),
                to_display_string(&i.w_m)
            )?;
            if a.measure {
                writeln!(out, "{:<8}{:>14}{:>14}  match", "charge", "closed", "measured")?;
            } else {
                writeln!(out, "{:<8}{:>14}", "charge", "closed")?;
            }
            for r in &rows {
                write!(out, "{:<8}{:>14}", r.name, to_display_string(&r.closed))?;
                if a.measure {
                    write!(out, "{:>14}  {}", measured_text(r, to_display_string), match_text(r))?;
                }
                writeln!(out)?;
            }
        }
    }
    if all_match {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn measured_text(r: &ChargeRow, fmt: fn(&Rational) -> String) -> String {
    match &r.measured {
        Some(Some(x)) => fmt(x),
        _ => "-".to_string(),
    }
}

fn match_text(r: &ChargeRow) -> &'static str {
    match r.matches() {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "-",
    }
}

fn csv_error(e: csv::Error) -> Failure {
    Failure::Usage(format!("csv output: {e}"))
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    check_ranges(a.d_max, a.p_max)?;
    let cfg = verify::VerifyConfig {
        d_max: a.d_max,
        p_max: a.p_max,
        seed: a.seed,
        samples: a.samples,
        self_test_fault: a.self_test_fault,
    };
    if cfg.self_test_fault {
        writeln!(out, "self-test: one binomial coefficient is deliberately wrong")?;
    }
    let reports = verify::run_all(&cfg);
    writeln!(out, "{:<24}{:>8}  status", "suite", "checks")?;
    for r in &reports {
        writeln!(out, "{:<24}{:>8}  {}", r.name, r.checks, if r.passed() { "pass" } else { "FAIL" })?;
    }
    let mut ok = true;
    for r in reports.iter().filter(|r| !r.passed()) {
        ok = false;
        writeln!(out, "{}: {} failure(s); first witness: {}", r.name, r.failures.len(), r.failures[0])?;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_sums(a: &SumsArgs, out: &mut dyn Write) -> CmdResult {
    check_ranges(a.d, a.p)?;
    let mut rows = Vec::new();
    for kind in SumKind::all(a.d) {
        rows.push((kind.to_string(), sum_closed(kind, a.d, a.p)?, sum_brute(kind, a.d, a.p)?));
    }
    match a.format {
        Format::Text => {
            writeln!(out, "d={} p={}", a.d, a.p)?;
            writeln!(out, "{:<10}{:>16}{:>16}", "sum", "closed", "brute")?;
            for (name, c, b) in &rows {
                writeln!(out, "{name:<10}{c:>16}{b:>16}")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["sum", "closed", "brute"]).map_err(csv_error)?;
            for (name, c, b) in &rows {
                w.write_record([name.clone(), c.to_string(), b.to_string()]).map_err(csv_error)?;
            }
            out.write_all(&w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?)?;
        }
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|(name, c, b)| json!({"sum": name, "closed": c.to_string(), "brute": b.to_string()}))
                .collect();
            let value = json!({"d": a.d, "p": a.p, "sums": list});
            writeln!(out, "{}", serde_json::to_string_pretty(&value).map_err(|e| Failure::Usage(e.to_string()))?)?;
        }
    }
    if rows.iter().all(|(_, c, b)| c == b) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> std::result::Result<&'a str, Failure> {
    v.as_deref().ok_or_else(|| Failure::Usage(format!("--{flag} is required for this kind")))
}

fn fields(v: &Option<String>, flag: &str, d: usize) -> std::result::Result<Vec<LaurentField>, Failure> {
    parse_field_vec(required(v, flag)?, d).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
}

fn laurent(v: &Option<String>, flag: &str) -> std::result::Result<LaurentPoly, Failure> {
    LaurentPoly::parse(required(v, flag)?).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
}

fn cmd_cocycle(a: &CocycleArgs, out: &mut dyn Write) -> CmdResult {
    check_ranges(a.d, 0)?;
    let q = LaurentVec::parse(&a.traj).map_err(|e| Failure::Usage(format!("--traj: {e}")))?;
    if q.dim() != a.d {
        return Err(Failure::Usage(format!("--traj has {} components, expected {}", q.dim(), a.d)));
    }
    let value = match a.kind {
        CocycleKind::Virasoro => virasoro_cocycle(&fields(&a.xi, "xi", a.d)?, &fields(&a.eta, "eta", a.d)?, &q, &a.c1, &a.c2)?,
        CocycleKind::Affine => affine_cocycle(&fields(&a.x, "x", a.d)?, &fields(&a.y, "y", a.d)?, &q, &a.c5, &a.c8)?,
        CocycleKind::Mixed => mixed_cocycle(&fields(&a.xi, "xi", a.d)?, &fields(&a.x, "x", a.d)?, &q, &a.c7)?,
        CocycleKind::ReparamTt => reparam_tt_cocycle(&laurent(&a.f, "f")?, &laurent(&a.g, "g")?, &a.c4),
        CocycleKind::ReparamVector => reparam_vector_cocycle(&laurent(&a.f, "f")?, &fields(&a.xi, "xi", a.d)?, &q, &a.c3)?,
        CocycleKind::ReparamGauge => reparam_gauge_cocycle(&laurent(&a.f, "f")?, &fields(&a.x, "x", a.d)?, &q, &a.c6)?,
    };
    writeln!(out, "{}", to_display_string(&value))?;
    Ok(())
}
