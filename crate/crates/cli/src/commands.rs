//! Subcommands. [`run`] returns the process exit code: 0 on success or a
//! passed check, 1 on a failed verification. Errors are usage or input
//! errors and map to exit code 2.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use nuobdd::bounds::certificate::OrderPolicy;
use nuobdd::bounds::hierarchy::{bound_report, hierarchy_report};
use nuobdd::compose::{intersection_recorded, union_recorded};
use nuobdd::constructions::*;
use nuobdd::{
    Backend, BitString, BooleanFunction, Evaluator, Exec, LeveledProgram, Mode, Probability, TruthTable, VariableOrder,
};

use crate::format::{read_program, ProgramFile};
use crate::report::ReportFile;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "nuobdd", version, about = "Build, run and certify ordered binary decision diagrams")]
pub struct Cli {
    /// Run enumerations on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a named construction as a program file.
    Build {
        family: Construction,
        #[command(flatten)]
        params: Params,
        /// Use the construction's uncorrected parameters (notperm, notexact).
        #[arg(long)]
        literal: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print the acceptance probability of one input.
    Eval {
        program: PathBuf,
        bits: String,
        /// Evaluate in floating point (uncertified).
        #[arg(long)]
        float: bool,
    },
    /// Check a program against a function on every input.
    Verify {
        program: PathBuf,
        family: FunctionFamily,
        #[command(flatten)]
        params: Params,
        #[arg(long, value_enum, default_value_t = VerifyMode::Nondeterministic)]
        mode: VerifyMode,
    },
    /// Union (direct sum) or intersection (tensor product) of two programs.
    Compose {
        op: ComposeOp,
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Width certificates for one function.
    Bound {
        family: FunctionFamily,
        #[command(flatten)]
        params: Params,
        /// `natural`, `all`, or orders like `1,2,3;3,2,1`.
        #[arg(long, default_value = "natural")]
        orders: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Width hierarchy table for rows `d` of a range like `2..6`.
    Report {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "2..4")]
        d: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Default, Args)]
pub struct Params {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Truth table, `2^n` bits with x1 as the most significant index bit.
    #[arg(long)]
    pub bits: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Notperm,
    ExactU,
    ExactD,
    Notexact,
    Mod,
    AndNobdd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FunctionFamily {
    Notperm,
    Exact,
    Notexact,
    Mod,
    And,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Nondeterministic,
    Exact,
    Deterministic,
}

impl From<VerifyMode> for Mode {
    fn from(m: VerifyMode) -> Mode {
        match m {
            VerifyMode::Nondeterministic => Mode::Nondeterministic,
            VerifyMode::Exact => Mode::Exact,
            VerifyMode::Deterministic => Mode::Deterministic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComposeOp {
    Union,
    Intersect,
}

fn need(v: Option<usize>, flag: &str) -> Result<usize> {
    v.ok_or_else(|| anyhow!("missing --{flag}"))
}

impl Params {
    fn n(&self) -> Result<usize> {
        need(self.n, "n")
    }
    fn k(&self) -> Result<usize> {
        need(self.k, "k")
    }
    fn p(&self) -> Result<usize> {
        need(self.p, "p")
    }
    fn m(&self) -> Result<usize> {
        need(self.m, "m")
    }
}

pub fn build(family: Construction, params: &Params, literal: bool) -> Result<LeveledProgram> {
    ensure!(
        !literal || matches!(family, Construction::Notperm | Construction::Notexact),
        "--literal applies to notperm and notexact only"
    );
    Ok(match family {
        Construction::Notperm if literal => build_not_perm_literal(params.m()?)?,
        Construction::Notperm => build_not_perm(params.m()?)?,
        Construction::ExactU => build_exact_unitary(params.n()?, params.k()?)?,
        Construction::ExactD => build_exact_deterministic(params.n()?, params.k()?)?,
        Construction::Notexact if literal => build_not_exact_literal(params.n()?, params.k()?)?,
        Construction::Notexact => build_not_exact(params.n()?, params.k()?)?,
        Construction::Mod => build_mod(params.n()?, params.p()?)?,
        Construction::AndNobdd => build_and_nobdd(params.n()?)?,
    })
}

pub fn function(family: FunctionFamily, params: &Params) -> Result<BooleanFunction> {
    Ok(match family {
        FunctionFamily::Notperm => {
            let m = params.m()?;
            if let Some(n) = params.n {
                ensure!(n == m * m, "notperm on m = {m} has n = {}, got --n {n}", m * m);
            }
            BooleanFunction::not_perm(m)?
        }
        FunctionFamily::Exact => BooleanFunction::exact(params.n()?, params.k()?)?,
        FunctionFamily::Notexact => BooleanFunction::not_exact(params.n()?, params.k()?)?,
        FunctionFamily::Mod => BooleanFunction::modulo(params.n()?, params.p()?)?,
        FunctionFamily::And => BooleanFunction::and(params.n()?),
        FunctionFamily::Table => {
            let bits: BitString = params
                .bits
                .as_deref()
                .ok_or_else(|| anyhow!("missing --bits"))?
                .parse()
                .map_err(|e| anyhow!("bad --bits: {e}"))?;
            let len = bits.len();
            ensure!(len.is_power_of_two() && len >= 2, "--bits must have length 2^n with n >= 1, got {len}");
            let n = len.trailing_zeros() as usize;
            if let Some(given) = params.n {
                ensure!(given == n, "--bits has length 2^{n}, got --n {given}");
            }
            BooleanFunction::from_table(TruthTable::from_fn(n, |i| bits.bit(i as usize + 1)))
        }
    })
}

pub fn parse_orders(s: &str, n: usize) -> Result<OrderPolicy> {
    match s.trim() {
        "natural" => Ok(OrderPolicy::Natural),
        "all" => Ok(OrderPolicy::All),
        list => {
            let orders = list
                .split(';')
                .map(|o| {
                    let vars = o
                        .split(',')
                        .map(|v| v.trim().parse::<usize>().with_context(|| format!("bad variable {v:?} in order")))
                        .collect::<Result<Vec<_>>>()?;
                    ensure!(vars.len() == n, "order {o:?} lists {} variables, n = {n}", vars.len());
                    Ok(VariableOrder::new(vars)?)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(OrderPolicy::Given(orders))
        }
    }
}

pub fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let a: usize = a.trim().parse().with_context(|| format!("bad range {s:?}"))?;
    let b: usize = b.trim().parse().with_context(|| format!("bad range {s:?}"))?;
    ensure!(a <= b, "empty range {s:?}");
    Ok(a..=b)
}

/// `0 (exactly)`, `1`, `1/2 = 0.500000000000`, `sin^2(2*pi/5) = 0.904508497187`
/// or `0.904508497187 (float, uncertified)`.
pub fn render_probability(p: &Probability) -> String {
    match p {
        Probability::Exact(s) if s.is_zero() => "0 (exactly)".into(),
        Probability::Exact(s) if s.is_one() => "1".into(),
        Probability::Exact(s) => format!("{s} = {:.12}", s.to_f64()),
        Probability::SinSquared(a) => format!("sin^2({a}) = {:.12}", p.to_f64()),
        Probability::Float(x) => format!("{x:.12} (float, uncertified)"),
    }
}

fn write_or_print(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn emit_program(p: &LeveledProgram, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    write_or_print(&ProgramFile::from_program(p).to_json(), path, out)?;
    if let Some(path) = path {
        writeln!(out, "wrote {} ({}, width {}, n = {})", path.display(), p.semantics(), p.width(), p.n())?;
    }
    Ok(())
}

fn emit_report(report: &ReportFile, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    for c in &report.certificates {
        let note = if c.note.is_empty() { String::new() } else { format!(" [{}]", c.note) };
        writeln!(
            out,
            "{}: {} {} {} ({}, verified: {}){note}",
            c.function, c.model, c.bound, c.value, c.evidence_kind, c.verified
        )?;
    }
    if let Some(path) = path {
        write_or_print(&report.to_json(), Some(path), out)?;
        writeln!(out, "wrote {}", path.display())?;
    }
    Ok(())
}

fn command_line() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match cli.command {
        Command::Build { family, params, literal, out: path } => {
            let p = build(family, &params, literal)?;
            emit_program(&p, path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Eval { program, bits, float } => {
            let p = read_program(&program)?;
            let input: BitString = bits.parse().map_err(|e| anyhow!("bad input bits: {e}"))?;
            let backend = if float { Backend::Float } else { Backend::Exact };
            let ev = Evaluator::new(&p, backend)?;
            let prob = ev.probability(&input)?;
            let verdict = if prob.is_zero() { "reject" } else { "accept" };
            writeln!(out, "{}; {verdict}", render_probability(&prob))?;
            Ok(EXIT_OK)
        }
        Command::Verify { program, family, params, mode } => {
            let p = read_program(&program)?;
            let f = function(family, &params)?;
            ensure!(f.arity() == p.n(), "program reads {} variables, function {} has {}", p.n(), f.name(), f.arity());
            let r = Evaluator::new(&p, Backend::Exact)?.computes(&f, mode.into(), exec)?;
            match &r.counterexample {
                None => {
                    writeln!(out, "pass: {} ({} mode, {} inputs)", r.function, r.mode, r.inputs_checked)?;
                    Ok(EXIT_OK)
                }
                Some(c) => {
                    writeln!(out, "fail: {} ({} mode): {c}", r.function, r.mode)?;
                    Ok(EXIT_FAIL)
                }
            }
        }
        Command::Compose { op, a, b, out: path } => {
            let (pa, pb) = (read_program(&a)?, read_program(&b)?);
            let (p, record) = match op {
                ComposeOp::Union => union_recorded(&pa, &pb)?,
                ComposeOp::Intersect => intersection_recorded(&pa, &pb)?,
            };
            emit_program(&p, path.as_deref(), out)?;
            writeln!(out, "{record}")?;
            Ok(EXIT_OK)
        }
        Command::Bound { family, params, orders, out: path } => {
            let f = function(family, &params)?;
            let policy = parse_orders(&orders, f.arity())?;
            let certs = bound_report(&f, &policy, exec)?;
            emit_report(&ReportFile::from_certificates(&command_line(), &certs), path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Report { n, d, out: path } => {
            let ds = parse_range(&d)?;
            let h = hierarchy_report(n, ds, exec)?;
            for row in &h.rows {
                let lower = row.lower().map_or("-".to_string(), |v| v.to_string());
                writeln!(
                    out,
                    "d = {}: {} upper {} ({}) lower {lower} {}",
                    row.d,
                    row.function,
                    row.upper.value,
                    row.upper.verified,
                    if row.separates() { "separates" } else { "does not separate" }
                )?;
            }
            let report = ReportFile::from_hierarchy(&command_line(), &h);
            emit_report(&report, path.as_deref(), out)?;
            if path.is_none() {
                write_or_print(&report.to_json(), None, out)?;
            }
            Ok(EXIT_OK)
        }
    }
}

pub fn main_with(args: impl IntoIterator<Item = std::ffi::OsString>, out: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nuobdd::{Angle, Scalar};

    #[test]
    fn renders_probabilities() {
        assert_eq!(render_probability(&Probability::Exact(Scalar::zero())), "0 (exactly)");
        assert_eq!(render_probability(&Probability::Exact(Scalar::one())), "1");
        assert_eq!(render_probability(&Probability::Exact(Scalar::ratio(1, 2))), "1/2 = 0.500000000000");
        assert_eq!(
            render_probability(&Probability::sin_squared(Angle::pi_frac(2, 5))),
            "sin^2(2*pi/5) = 0.904508497187"
        );
        assert_eq!(render_probability(&Probability::Float(0.25)), "0.250000000000 (float, uncertified)");
    }

    #[test]
    fn parses_orders_and_ranges() {
        assert_eq!(parse_orders("all", 3).unwrap(), OrderPolicy::All);
        match parse_orders("1,2,3;3,1,2", 3).unwrap() {
            OrderPolicy::Given(v) => assert_eq!(v[1].as_slice(), [3, 1, 2]),
            other => panic!("{other:?}"),
        }
        assert!(parse_orders("1,2", 3).is_err());
        assert!(parse_orders("1,1,2", 3).is_err());
        assert_eq!(parse_range("2..6").unwrap(), 2..=6);
        assert_eq!(parse_range("2..=6").unwrap(), 2..=6);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert!(parse_range("5..2").is_err());
    }

    #[test]
    fn function_params() {
        let p = Params { bits: Some("0110".into()), ..Default::default() };
        let f = function(FunctionFamily::Table, &p).unwrap();
        assert_eq!(f.arity(), 2);
        assert!(f.eval_index(1) && !f.eval_index(3));
        assert!(function(FunctionFamily::Table, &Params { bits: Some("011".into()), ..Default::default() }).is_err());
        assert!(function(FunctionFamily::Exact, &Params { n: Some(3), ..Default::default() }).is_err());
        let e = build(Construction::ExactU, &Params { n: Some(4), k: Some(5), ..Default::default() }, false).unwrap_err();
        assert!(e.to_string().contains("k <= n required"), "{e}");
        assert!(build(Construction::Mod, &Params { n: Some(4), p: Some(2), ..Default::default() }, true).is_err());
    }
}
