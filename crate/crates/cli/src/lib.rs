//! Command-line driver for `tangle-core`.
//!
//! Exit codes: 0 on success, 2 for malformed input, 3 when a mathematical
//! precondition fails (reducible modulus, non-unit, small characteristic).

pub mod text;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use tangle_core::bench::{run_ladder, to_csv, BenchOp};
use tangle_core::bitangle::{
    biv_tangle, biv_untangle, quot_inv, quot_mul, BivariateConfig, KElem, MaximalIdeal,
};
use tangle_core::field::{tower_flatten, tower_unflatten, PrimeField};
use tangle_core::powmod::pow_x_mod;
use tangle_core::staircase::{mono_inv, mono_mul, StairPoly, Staircase};
use tangle_core::unitangle::PowerModulus;
use tangle_core::upoly::{BivPoly, DensePoly};
use thiserror::Error;

use text::ParseError;

/// Largest accepted dimension of a quotient algebra.
pub const MAX_DIMENSION: usize = 1 << 24;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tangle", version, about = "Untangling and tangling modulo primary ideals over prime fields")]
struct Cli {
    /// Characteristic of the base field.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PowerArgs {
    /// Monic irreducible modulus T.
    #[arg(short = 'T', long = "modulus", allow_hyphen_values = true)]
    t: String,
    /// Multiplicity mu of T^mu.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    mu: u64,
}

#[derive(Args, Debug)]
struct IdealArgs {
    /// Univariate generator T1 in x1.
    #[arg(long, allow_hyphen_values = true)]
    t1: String,
    /// Generator T2, monic in x2, as bivariate rows.
    #[arg(long, allow_hyphen_values = true)]
    t2: String,
    /// Staircase of J' as `a:b,...` generator exponents.
    #[arg(short = 'J', long = "staircase", allow_hyphen_values = true)]
    staircase: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Taylor expansion of F at the roots of T, to order mu.
    Untangle {
        #[command(flatten)]
        power: PowerArgs,
        #[arg(short = 'F', allow_hyphen_values = true)]
        f: String,
    },
    /// The residue modulo T^mu with a given jet.
    Tangle {
        #[command(flatten)]
        power: PowerArgs,
        #[arg(short = 'G', allow_hyphen_values = true)]
        g: String,
    },
    /// x^D modulo P.
    Powmod {
        #[arg(short = 'P', allow_hyphen_values = true)]
        p: String,
        #[arg(short = 'D', allow_hyphen_values = true)]
        d: String,
    },
    /// Bivariate untangling modulo the ideal I.
    BivUntangle {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(short = 'F', allow_hyphen_values = true)]
        f: String,
    },
    /// Inverse of biv-untangle.
    BivTangle {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(short = 'G', allow_hyphen_values = true)]
        g: String,
    },
    /// Product modulo a monomial ideal.
    MonoMul {
        #[arg(short = 'J', long = "staircase", allow_hyphen_values = true)]
        staircase: String,
        #[arg(short = 'A', allow_hyphen_values = true)]
        a: String,
        #[arg(short = 'B', allow_hyphen_values = true)]
        b: String,
    },
    /// Inverse modulo a monomial ideal.
    MonoInv {
        #[arg(short = 'J', long = "staircase", allow_hyphen_values = true)]
        staircase: String,
        #[arg(short = 'A', allow_hyphen_values = true)]
        a: String,
    },
    /// Product modulo I.
    QuotMul {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(short = 'A', allow_hyphen_values = true)]
        a: String,
        #[arg(short = 'B', allow_hyphen_values = true)]
        b: String,
    },
    /// Inverse modulo I.
    QuotInv {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(short = 'A', allow_hyphen_values = true)]
        a: String,
    },
    /// Median timings over a doubling ladder, as `n,ms` CSV.
    Bench {
        /// One of untangle, tangle, powmod, mono-mul, mono-inv, biv-untangle, biv-tangle, quot-mul.
        #[arg(long, value_parser = parse_op)]
        op: BenchOp,
        /// log2 of the smallest size.
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=24))]
        from: u32,
        /// log2 of the largest size.
        #[arg(long, default_value_t = 14, value_parser = clap::value_parser!(u32).range(1..=24))]
        to: u32,
        /// Runs per size; the median is reported.
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(5..=1000))]
        runs: u64,
    },
}

fn parse_op(s: &str) -> Result<BenchOp, String> {
    s.parse()
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] tangle_core::Error),
    #[error("cannot read standard input: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_precondition() => EXIT_PRECONDITION,
            _ => EXIT_INPUT,
        }
    }
}

/// Resolves `-` arguments against standard input, which is read at most once.
struct Source<'a> {
    stdin: &'a mut dyn Read,
    used: bool,
}

impl Source<'_> {
    fn get(&mut self, arg: &str) -> Result<String, CliError> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.used {
            return Err(CliError::Usage("only one argument may be read from standard input".into()));
        }
        self.used = true;
        let mut s = String::new();
        self.stdin.read_to_string(&mut s)?;
        Ok(s)
    }
}

/// Command output: the text form and the JSON payload.
struct Output {
    text: String,
    json: Value,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                EXIT_INPUT
            } else {
                let _ = write!(stdout, "{rendered}");
                EXIT_OK
            };
        }
    };
    let mut src = Source { stdin, used: false };
    match execute(&cli, &mut src) {
        Ok(out) => {
            let printed = if cli.json {
                writeln!(stdout, "{}", out.json)
            } else {
                write!(stdout, "{}", out.text)
            };
            match printed {
                Ok(()) => EXIT_OK,
                Err(_) => EXIT_INPUT,
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, src: &mut Source) -> Result<Output, CliError> {
    let p = cli
        .prime
        .ok_or_else(|| CliError::Usage("the --prime option is required".into()))?;
    let f = PrimeField::new(p)?;
    let (name, text, result) = match &cli.command {
        Command::Untangle { power, f: fa } => {
            let m = power_modulus(&f, power, src)?;
            let a = DensePoly::from_coeffs(&f, text::parse_coeffs(&f, &src.get(fa)?)?);
            let jet = m.untangle(&a);
            let d = m.degree();
            ("untangle", text::print_jet(&jet, d), json!(pad_all(&jet, d)))
        }
        Command::Tangle { power, g } => {
            let m = power_modulus(&f, power, src)?;
            let jet = text::parse_jet(&f, &src.get(g)?, m.degree())?;
            let r = m.tangle(&jet)?;
            ("tangle", text::print_coeffs(r.coeffs()), json!(r.coeffs()))
        }
        Command::Powmod { p: pa, d } => {
            let modulus = DensePoly::from_coeffs(&f, text::parse_coeffs(&f, &src.get(pa)?)?);
            let e = text::parse_exponent(&src.get(d)?)?;
            let r = pow_x_mod(&f, &e, &modulus)?;
            ("powmod", text::print_coeffs(r.coeffs()), json!(r.coeffs()))
        }
        Command::BivUntangle { ideal, f: fa } => {
            let cfg = config(&f, ideal, src)?;
            let a = fit(&text::parse_rows(&f, &src.get(fa)?)?, cfg.basis(), &0, true)?;
            let r = flatten_all(&cfg, &biv_untangle(&a, &cfg)?);
            let d = cfg.ideal().degree();
            ("biv-untangle", text::print_jet_rows(&r, d), json!(r))
        }
        Command::BivTangle { ideal, g } => {
            let cfg = config(&f, ideal, src)?;
            let d = cfg.ideal().degree();
            let rows = text::parse_jet_rows(&f, &src.get(g)?, d)?;
            let k = cfg.ideal().field();
            let rows: Vec<Vec<KElem>> = rows
                .iter()
                .map(|r| r.iter().map(|e| tower_unflatten(k, e)).collect())
                .collect::<Result<_, _>>()?;
            let zero = tower_unflatten(k, &vec![0; d])?;
            let g = fit(&rows, cfg.jp(), &zero, false)?;
            let r = biv_tangle(&g, &cfg)?;
            ("biv-tangle", text::print_rows(&r.rows), json!(r.rows))
        }
        Command::MonoMul { staircase, a, b } => {
            let s = staircase_arg(&src.get(staircase)?)?;
            let a = fit(&text::parse_rows(&f, &src.get(a)?)?, &s, &0, false)?;
            let b = fit(&text::parse_rows(&f, &src.get(b)?)?, &s, &0, false)?;
            let r = mono_mul(&f, &a, &b, &s)?;
            ("mono-mul", text::print_rows(&r.rows), json!(r.rows))
        }
        Command::MonoInv { staircase, a } => {
            let s = staircase_arg(&src.get(staircase)?)?;
            let a = fit(&text::parse_rows(&f, &src.get(a)?)?, &s, &0, false)?;
            let r = mono_inv(&f, &a, &s)?;
            ("mono-inv", text::print_rows(&r.rows), json!(r.rows))
        }
        Command::QuotMul { ideal, a, b } => {
            let cfg = config(&f, ideal, src)?;
            let a = fit(&text::parse_rows(&f, &src.get(a)?)?, cfg.basis(), &0, true)?;
            let b = fit(&text::parse_rows(&f, &src.get(b)?)?, cfg.basis(), &0, true)?;
            let r = quot_mul(&a, &b, &cfg)?;
            ("quot-mul", text::print_rows(&r.rows), json!(r.rows))
        }
        Command::QuotInv { ideal, a } => {
            let cfg = config(&f, ideal, src)?;
            let a = fit(&text::parse_rows(&f, &src.get(a)?)?, cfg.basis(), &0, true)?;
            let r = quot_inv(&a, &cfg)?;
            ("quot-inv", text::print_rows(&r.rows), json!(r.rows))
        }
        Command::Bench { op, from, to, runs } => {
            if from > to {
                return Err(CliError::Usage(format!("--from {from} exceeds --to {to}")));
            }
            let sizes: Vec<usize> = (*from..=*to).map(|k| 1usize << k).collect();
            let rows = run_ladder(&f, *op, &sizes, *runs as usize)?;
            let table: Vec<Value> = rows.iter().map(|t| json!({"n": t.n, "ms": t.ms})).collect();
            return Ok(Output {
                text: to_csv(&rows),
                json: json!({"command": "bench", "prime": p, "op": op.name(), "rows": table}),
            });
        }
    };
    Ok(Output {
        text: text + "\n",
        json: json!({"command": name, "prime": p, "result": result}),
    })
}

fn power_modulus(f: &PrimeField, args: &PowerArgs, src: &mut Source) -> Result<PowerModulus<PrimeField>, CliError> {
    let t = DensePoly::from_coeffs(f, text::parse_coeffs(f, &src.get(&args.t)?)?);
    let d = t.degree().unwrap_or(0).max(1);
    let mu = usize::try_from(args.mu).unwrap_or(usize::MAX);
    check_dimension(d.saturating_mul(mu))?;
    Ok(PowerModulus::new(*f, t, mu)?)
}

fn config(f: &PrimeField, args: &IdealArgs, src: &mut Source) -> Result<BivariateConfig, CliError> {
    let t1 = DensePoly::from_coeffs(f, text::parse_coeffs(f, &src.get(&args.t1)?)?);
    let t2 = BivPoly::new(text::parse_rows(f, &src.get(&args.t2)?)?);
    let jp = staircase_arg(&src.get(&args.staircase)?)?;
    let d = t1.degree().unwrap_or(0).saturating_mul(t2.rows.len().saturating_sub(1));
    check_dimension(d.saturating_mul(jp.degree()))?;
    let ideal = MaximalIdeal::new(*f, t1, t2)?;
    Ok(BivariateConfig::new(ideal, jp)?)
}

fn staircase_arg(s: &str) -> Result<Staircase, CliError> {
    let jp: Staircase = s.trim().parse()?;
    check_dimension(jp.degree())?;
    check_dimension(jp.width().saturating_add(jp.height()))?;
    Ok(jp)
}

fn check_dimension(n: usize) -> Result<(), CliError> {
    if n > MAX_DIMENSION {
        return Err(CliError::Usage(format!("dimension {n} exceeds the limit {MAX_DIMENSION}")));
    }
    Ok(())
}

/// Lays `rows` out on the standard monomials of `s`. Coefficients outside
/// are dropped, or rejected when `strict`.
fn fit<E: Clone + PartialEq>(rows: &[Vec<E>], s: &Staircase, zero: &E, strict: bool) -> Result<StairPoly<E>, CliError> {
    let mut out = Vec::with_capacity(s.height());
    for b in 0..s.height() {
        let mut r = vec![zero.clone(); s.row_width(b)];
        let n = r.len();
        if let Some(src) = rows.get(b) {
            let keep = src.len().min(n);
            r[..keep].clone_from_slice(&src[..keep]);
        }
        out.push(r);
    }
    if strict {
        for (b, src) in rows.iter().enumerate() {
            let w = if b < s.height() { s.row_width(b) } else { 0 };
            if let Some(a) = src.iter().skip(w).position(|c| c != zero) {
                return Err(tangle_core::Error::OutsideBasis { a: a + w, b }.into());
            }
        }
    }
    Ok(StairPoly { rows: out })
}

fn flatten_all(cfg: &BivariateConfig, g: &StairPoly<KElem>) -> Vec<Vec<Vec<u64>>> {
    let k = cfg.ideal().field();
    g.rows
        .iter()
        .map(|r| r.iter().map(|e| tower_flatten(k, e)).collect())
        .collect()
}

fn pad_all(jet: &[Vec<u64>], d: usize) -> Vec<Vec<u64>> {
    jet.iter()
        .map(|e| {
            let mut e = e.clone();
            e.resize(d.max(e.len()), 0);
            e
        })
        .collect()
}
