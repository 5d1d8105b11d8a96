//! Command-line front end for `terna-core`.

use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use terna_core::lemmas::{
    lemma21_descent, lemma22_trace, lemma23i_odd, lemma23ii_check, lemma23iii_rep, lemma31_rep,
};
use terna_core::oracles::{crosscheck_with, Builtin};
use terna_core::repr::{all_representations, all_representations_diag, represent_diag, Strategy};
use terna_core::survey::{
    conjecture11_verify_with, remark21_scan_with, thm11_filter, thm13_filter, THM11_C_MAX,
    THM11_TEST_SET, THM13_N_LIMIT,
};
use terna_core::witness::{
    construct, remark12_bridge_with, thm12_witness, thm13_witness, Clause, Method,
};
use terna_core::{exceptional_set_with, represent, Error, SieveOptions};

pub mod parse;

pub use parse::{parse_form, FormExpr, ParseError};

#[derive(Debug, Parser)]
#[command(
    name = "terna",
    version,
    about = "Representations by ternary sums x(ax+b)+y(cy+d)+z(ez+f)"
)]
pub struct Cli {
    /// Worker threads for sieves (default: available parallelism).
    #[arg(long, global = true, env = "TERNA_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exceptional set of a form up to a limit.
    Exceptions(ExceptionsArgs),
    /// Find a representation of one integer.
    Represent {
        form: FormExpr,
        #[arg(long)]
        n: u64,
        /// List every representation.
        #[arg(long)]
        all: bool,
    },
    /// Witness for one of the universal triples or quadruples.
    Witness {
        #[arg(long, value_parser = parse_tuple::<3>, conflicts_with = "quad", required_unless_present = "quad")]
        triple: Option<Coeffs>,
        #[arg(long, value_parser = parse_tuple::<4>)]
        quad: Option<Coeffs>,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Constructive)]
        method: MethodArg,
    },
    /// Coefficient surveys.
    Survey {
        #[arg(long, value_enum)]
        theorem: SurveyKind,
        /// `c=50` for the triple survey, `a=3..13,n=1000` for the quadruple surveys.
        #[arg(long)]
        bounds: Option<String>,
    },
    /// Exceptional sets of the six open triples.
    Conjecture {
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
    },
    /// `n <= limit` with `20n+r` not of the form `5x^2+5y^2+4z^2`, r in {6, 14}.
    ScanRemark21 {
        #[arg(long, default_value_t = 10_000)]
        limit: u64,
    },
    /// Compare `x(2x+1)+y(3y+1)+z(7z+1) = n` with `21x^2+14y^2+6z^2 = 168n+41`.
    Bridge {
        #[arg(long, required = true)]
        remark12: bool,
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
    },
    /// Compare a closed-form exceptional set with the sieve.
    Crosscheck {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
    },
    /// Run one of the auxiliary lemmas.
    Lemma {
        #[arg(long, value_enum)]
        id: LemmaId,
        #[arg(allow_negative_numbers = true)]
        args: Vec<i64>,
    },
}

#[derive(Debug, Args)]
pub struct ExceptionsArgs {
    pub form: FormExpr,
    #[arg(long)]
    pub limit: u64,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
    /// Omit timing so output is byte-identical across runs.
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long, value_enum, default_value_t = StrategyArg::ShiftOr)]
    pub strategy: StrategyArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Constructive,
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    ShiftOr,
    Lattice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurveyKind {
    #[value(name = "1.1")]
    Triples,
    #[value(name = "1.3")]
    Quadruples,
    #[value(name = "remark1.3")]
    SmallQuadruples,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Gauss,
    #[value(name = "dickson-113")]
    Dickson113,
    #[value(name = "dickson-1052")]
    Dickson1052,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LemmaId {
    #[value(name = "2.1")]
    Descent,
    #[value(name = "2.2")]
    FiveFiveOne,
    #[value(name = "2.3i")]
    OddOdd,
    #[value(name = "2.3ii")]
    ThreeSix,
    #[value(name = "2.3iii")]
    OneThreeSix,
    #[value(name = "3.1")]
    OneOneTwo,
}

/// JSON shape of `exceptions --json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionsJson {
    pub form: String,
    pub limit: u64,
    pub exceptions: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    /// Something disagreed with what was expected.
    Mismatch,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Mismatch => 1,
        }
    }
}

/// Bad input detected after argument parsing; exits like a usage error.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Exit code for a failed command.
pub fn error_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(
            Error::Precondition(_)
            | Error::Unsupported(_)
            | Error::InvalidTerm { .. }
            | Error::InvalidDiagonal { .. }
            | Error::InvalidClass { .. }
            | Error::NotRepresentable { .. },
        ) => 2,
        _ => 1,
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Comma-separated coefficients such as `1,2,3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coeffs(pub Vec<u64>);

fn parse_tuple<const N: usize>(s: &str) -> Result<Coeffs, String> {
    let v: Vec<u64> = s
        .split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if v.len() != N {
        return Err(format!(
            "expected {N} comma-separated integers, got {}",
            v.len()
        ));
    }
    Ok(Coeffs(v))
}

#[derive(Debug, Default, PartialEq, Eq)]
struct Bounds {
    c: Option<u64>,
    a: Option<RangeInclusive<u64>>,
    n: Option<u64>,
}

fn parse_bounds(s: &str) -> anyhow::Result<Bounds> {
    let mut b = Bounds::default();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("bound {part:?} is not key=value")))?;
        let num = |v: &str| {
            v.trim()
                .parse::<u64>()
                .map_err(|_| usage(format!("bad number in {part:?}")))
        };
        match key.trim() {
            "c" => b.c = Some(num(value)?),
            "n" => b.n = Some(num(value)?),
            "a" => {
                let (lo, hi) = match value.split_once("..") {
                    Some((lo, hi)) => (num(lo)?, num(hi.trim_start_matches('='))?),
                    None => (num(value)?, num(value)?),
                };
                if lo == 0 || lo > hi {
                    return Err(usage(format!("empty or zero range in {part:?}")));
                }
                b.a = Some(lo..=hi);
            }
            k => return Err(usage(format!("unknown bound {k:?}"))),
        }
    }
    Ok(b)
}

fn sieve_options(threads: Option<usize>) -> anyhow::Result<SieveOptions> {
    let opts = SieveOptions::default();
    match threads {
        Some(0) => Err(usage("--threads must be at least 1")),
        Some(t) => Ok(opts.with_threads(t)),
        None => Ok(opts),
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
}

pub fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let opts = sieve_options(cli.threads)?;
    match cli.command {
        Command::Exceptions(args) => exceptions(args, &opts, out),
        Command::Represent { form, n, all } => represent_cmd(form, n, all, out),
        Command::Witness {
            triple,
            quad,
            n,
            method,
        } => witness_cmd(triple, quad, n, method, out),
        Command::Survey { theorem, bounds } => survey_cmd(theorem, bounds.as_deref(), out),
        Command::Conjecture { limit } => {
            let mut outcome = Outcome::Ok;
            for row in conjecture11_verify_with(limit, &opts)? {
                let (a, b, c) = row.triple;
                let label = format!("({a},{b},{c})");
                if row.exceptions.is_empty() {
                    writeln!(out, "{label:<10} empty up to {limit}")?;
                } else {
                    outcome = Outcome::Mismatch;
                    writeln!(out, "{label:<10} misses {}", join(&row.exceptions))?;
                }
            }
            Ok(outcome)
        }
        Command::ScanRemark21 { limit } => {
            let expected: [&[u64]; 2] = [&[0, 11], &[1, 10]];
            let mut outcome = Outcome::Ok;
            for ((r, found), want) in remark21_scan_with(limit, &opts)?.into_iter().zip(expected) {
                let want: Vec<u64> = want.iter().copied().filter(|&n| n <= limit).collect();
                if found != want {
                    outcome = Outcome::Mismatch;
                }
                writeln!(out, "r={r}: {{{}}}", join(&found))?;
            }
            Ok(outcome)
        }
        Command::Bridge { remark12: _, limit } => {
            let r = remark12_bridge_with(limit, &opts)?;
            writeln!(out, "limit {limit}")?;
            writeln!(out, "unrepresented: {{{}}}", join(&r.unrepresented))?;
            writeln!(out, "mismatches: {{{}}}", join(&r.mismatches))?;
            Ok(if r.mismatches.is_empty() {
                Outcome::Ok
            } else {
                Outcome::Mismatch
            })
        }
        Command::Crosscheck { family, limit } => {
            let b = match family {
                Family::Gauss => Builtin::GaussLegendre,
                Family::Dickson113 => Builtin::Dickson113,
                Family::Dickson1052 => Builtin::Dickson1052,
            };
            let r = crosscheck_with(&b.family(), &b.form(), limit, &opts)?;
            writeln!(out, "{}", r.label)?;
            writeln!(
                out,
                "limit {limit}, {} discrepancies",
                r.discrepancies.len()
            )?;
            if !r.agrees() {
                writeln!(out, "{}", join(&r.discrepancies))?;
                return Ok(Outcome::Mismatch);
            }
            Ok(Outcome::Ok)
        }
        Command::Lemma { id, args } => lemma_cmd(id, &args, out),
    }
}

fn exceptions(
    args: ExceptionsArgs,
    opts: &SieveOptions,
    out: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    let strategy = match args.strategy {
        StrategyArg::ShiftOr => Strategy::ShiftOr,
        StrategyArg::Lattice => Strategy::Lattice,
    };
    let report = exceptional_set_with(
        args.form.target(),
        args.limit,
        &opts.with_strategy(strategy),
    )?;
    let elapsed_ms = (!args.no_timing).then_some(report.elapsed.as_millis() as u64);
    if args.json {
        let j = ExceptionsJson {
            form: args.form.to_string(),
            limit: report.limit,
            exceptions: report.exceptions,
            elapsed_ms,
        };
        serde_json::to_writer(&mut *out, &j)?;
        writeln!(out)?;
    } else if args.csv {
        writeln!(out, "exception")?;
        for n in &report.exceptions {
            writeln!(out, "{n}")?;
        }
    } else {
        writeln!(
            out,
            "E({}) up to {}: {} exceptions",
            args.form,
            report.limit,
            report.exceptions.len()
        )?;
        if !report.exceptions.is_empty() {
            writeln!(out, "{}", join(&report.exceptions))?;
        }
        if let Some(ms) = elapsed_ms {
            writeln!(out, "elapsed {ms} ms")?;
        }
    }
    Ok(Outcome::Ok)
}

fn represent_cmd(
    form: FormExpr,
    n: u64,
    all: bool,
    out: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    let found: Vec<[i64; 3]> = match (form, all) {
        (FormExpr::Poly(p), false) => represent(&p, n).map(|w| w.coords()).into_iter().collect(),
        (FormExpr::Poly(p), true) => all_representations(&p, n)
            .iter()
            .map(|w| w.coords())
            .collect(),
        (FormExpr::Diagonal(f), false) => represent_diag(&f, n).into_iter().collect(),
        (FormExpr::Diagonal(f), true) => all_representations_diag(&f, n),
    };
    if found.is_empty() {
        writeln!(out, "{n} is not represented by {form}")?;
        return Ok(Outcome::Mismatch);
    }
    for [x, y, z] in found {
        writeln!(out, "({x}, {y}, {z})")?;
    }
    Ok(Outcome::Ok)
}

fn witness_cmd(
    triple: Option<Coeffs>,
    quad: Option<Coeffs>,
    n: u64,
    method: MethodArg,
    out: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    let clause = match (&triple, &quad) {
        (Some(Coeffs(t)), _) => Clause::for_triple((t[0], t[1], t[2])),
        (_, Some(Coeffs(q))) => Clause::for_quadruple((q[0], q[1], q[2], q[3])),
        _ => return Err(usage("one of --triple or --quad is required")),
    };
    let method = match method {
        MethodArg::Constructive => Method::Constructive,
        MethodArg::Search => Method::Search,
    };
    let w = match (&triple, &quad) {
        (Some(Coeffs(t)), _) => thm12_witness((t[0], t[1], t[2]), n, method)?,
        (_, Some(Coeffs(q))) => thm13_witness((q[0], q[1], q[2], q[3]), n, method)?,
        _ => unreachable!(),
    };
    let clause = clause.expect("witness succeeded");
    let p = clause.poly();
    if method == Method::Constructive {
        let t = construct(clause, n)?;
        writeln!(out, "clause {}", clause.tag())?;
        writeln!(out, "{}", t.intermediate)?;
        writeln!(out, "{} = {}", p.reduce().constrained, p.reduce().target(n))?;
        writeln!(
            out,
            "  at ({}, {}, {})",
            t.constrained[0], t.constrained[1], t.constrained[2]
        )?;
    }
    let value = p.evaluate(w);
    writeln!(out, "{p} = {value} at {w}")?;
    Ok(if value == n as i128 {
        Outcome::Ok
    } else {
        Outcome::Mismatch
    })
}

fn survey_cmd(
    kind: SurveyKind,
    bounds: Option<&str>,
    out: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    let b = bounds.map(parse_bounds).transpose()?.unwrap_or_default();
    match kind {
        SurveyKind::Triples => {
            if b.a.is_some() || b.n.is_some() {
                return Err(usage("the triple survey takes only c=<max>"));
            }
            let c_max = b.c.unwrap_or(THM11_C_MAX);
            writeln!(
                out,
                "# x(ax+1)+y(by+1)+z(cz+1), 1 <= a <= b <= c <= {c_max}, tested at n in {{{}}}",
                join(&THM11_TEST_SET)
            )?;
            writeln!(
                out,
                "# n in {{1, 2, 4, 5, 9}} already rules out every c > 10"
            )?;
            let got = thm11_filter(c_max, &THM11_TEST_SET);
            for (a, b, c) in &got {
                writeln!(out, "({a},{b},{c})")?;
            }
            writeln!(out, "# {} survivors", got.len())?;
        }
        SurveyKind::Quadruples | SurveyKind::SmallQuadruples => {
            if b.c.is_some() {
                return Err(usage("the quadruple surveys take a=<lo>..<hi>,n=<limit>"));
            }
            let default = if kind == SurveyKind::Quadruples {
                3..=13
            } else {
                1..=2
            };
            let range = b.a.unwrap_or(default);
            let n_limit = b.n.unwrap_or(THM13_N_LIMIT);
            writeln!(
                out,
                "# x(ax+b)+y(ay+c)+z(az+d), {} <= a <= {}, 0 <= b <= c <= d <= a, every n <= {n_limit}",
                range.start(),
                range.end()
            )?;
            let got = thm13_filter(range, n_limit)?;
            for (a, b, c, d) in &got {
                writeln!(out, "({a},{b},{c},{d})")?;
            }
            writeln!(out, "# {} survivors", got.len())?;
        }
    }
    Ok(Outcome::Ok)
}

fn lemma_cmd(id: LemmaId, args: &[i64], out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let want = match id {
        LemmaId::Descent | LemmaId::FiveFiveOne | LemmaId::OneThreeSix => 2,
        LemmaId::OddOdd | LemmaId::ThreeSix | LemmaId::OneOneTwo => 1,
    };
    if args.len() != want {
        return Err(usage(format!(
            "lemma {id:?} takes {want} integer arguments, got {}",
            args.len()
        )));
    }
    let nonneg = |i: usize| -> anyhow::Result<u64> {
        u64::try_from(args[i])
            .map_err(|_| usage(format!("argument {} must be nonnegative", args[i])))
    };
    match id {
        LemmaId::Descent => {
            let ((x, y), trace) = lemma21_descent(args[0], args[1])?;
            for s in &trace.steps {
                writeln!(
                    out,
                    "({}, {}) signs ({:+}, {:+}) -> ({}, {})",
                    s.before.0, s.before.1, s.signs.0, s.signs.1, s.after.0, s.after.1
                )?;
            }
            writeln!(out, "({x}, {y})")?;
        }
        LemmaId::FiveFiveOne => {
            let (n, r) = (nonneg(0)?, nonneg(1)?);
            if r != 6 && r != 14 {
                return Err(usage("r must be 6 or 14"));
            }
            let t = lemma22_trace(n, r)?;
            writeln!(out, "{}", t.three_squares)?;
            writeln!(out, "{}", t.aligned)?;
            let [x, y, z] = t.result;
            writeln!(out, "({x}, {y}, {z})")?;
        }
        LemmaId::OddOdd => match lemma23i_odd(nonneg(0)?) {
            Ok((u, v)) => writeln!(out, "({u}, {v})")?,
            Err(e @ Error::NotFound { .. }) => {
                writeln!(out, "{e}")?;
                return Ok(Outcome::Mismatch);
            }
            Err(e) => return Err(e.into()),
        },
        LemmaId::ThreeSix => {
            let (lhs, rhs) = lemma23ii_check(nonneg(0)?);
            writeln!(out, "3x^2+6y^2: {lhs}")?;
            writeln!(out, "3 | w and u^2+2v^2: {rhs}")?;
            if lhs != rhs {
                return Ok(Outcome::Mismatch);
            }
        }
        LemmaId::OneThreeSix => {
            let delta = u8::try_from(nonneg(1)?)
                .ok()
                .filter(|d| *d <= 1)
                .ok_or_else(|| usage("delta must be 0 or 1"))?;
            let [x, y, z] = lemma23iii_rep(nonneg(0)?, delta)?;
            writeln!(out, "({x}, {y}, {z})")?;
        }
        LemmaId::OneOneTwo => {
            let n = nonneg(0)?;
            if n == 0 {
                return Err(usage("n must be positive"));
            }
            let [x, y, z] = lemma31_rep(n)?;
            writeln!(out, "({x}, {y}, {z})")?;
        }
    }
    Ok(Outcome::Ok)
}

/// Parse arguments and run, returning the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code() as u8;
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    match run(cli, out) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            let _ = writeln!(err, "error: {:#}", e);
            error_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(
            parse_bounds("a=3..13,n=1000").unwrap(),
            Bounds {
                c: None,
                a: Some(3..=13),
                n: Some(1000)
            }
        );
        assert_eq!(parse_bounds("c=50").unwrap().c, Some(50));
        assert_eq!(parse_bounds("a=4").unwrap().a, Some(4..=4));
        assert!(parse_bounds("a=5..3").is_err());
        assert!(parse_bounds("q=1").is_err());
        assert!(parse_bounds("c").is_err());
    }

    #[test]
    fn tuples() {
        assert_eq!(parse_tuple::<3>("1, 2,3").unwrap(), Coeffs(vec![1, 2, 3]));
        assert!(parse_tuple::<3>("1,2").is_err());
        assert!(parse_tuple::<4>("1,2,3,x").is_err());
    }
}
