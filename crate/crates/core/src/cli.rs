//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a check fails or a predicate is false,
//! 2 on usage or parse errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use crate::chernalg::{Base, VirtualBundle};
use crate::classifier::{census, count_types, enumerate_types};
use crate::exactpoly::{parse_expr, Expr, Poly, Ring, VarTable};
use crate::schwarz::{derived_s5_check, equivalence_scan, explicit_s5_check, s_k_check, ChernTuple};
use crate::steenrod::{steenrod_p, P1Algebra};
use crate::verify::run_all;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "chernkit",
    version,
    about = "Exact Chern class and Steenrod power calculator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Steenrod powers on Chern classes and on F_3[t, c2, c3] u
    #[command(subcommand)]
    Steenrod(SteenrodCmd),
    /// Chern classes of virtual bundles
    #[command(subcommand)]
    Chern(ChernCmd),
    /// Schwarzenberger divisibility conditions
    #[command(subcommand)]
    Schwarz(SchwarzCmd),
    /// Count rank-3 bundle types on CP^5 with given Chern classes
    #[command(allow_negative_numbers = true)]
    Classify {
        a1: BigInt,
        a2: BigInt,
        a3: BigInt,
        #[arg(long)]
        json: bool,
    },
    /// Write a census CSV over a half-open box of Chern triples
    Census {
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        min: [i64; 3],
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        max: [i64; 3],
        #[arg(long)]
        out: PathBuf,
    },
    /// Replay the built-in identity checks
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
pub enum SteenrodCmd {
    /// Evaluate `P1(expr)`, `P2(expr)` or a bare polynomial
    Apply {
        #[arg(long, default_value_t = 3)]
        rank: usize,
        #[arg(long, default_value_t = 3)]
        prime: u32,
        #[arg(long)]
        json: bool,
        expr: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ChernCmd {
    /// Total class of -V
    Invert(BundleArgs),
    /// Whitney sum of the given bundles
    Sum(BundleArgs),
    /// Total class of the dual
    Dual(BundleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseKind {
    Cp5,
    Formal,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct BundleArgs {
    #[arg(long, value_enum, default_value_t = BaseKind::Cp5)]
    base: BaseKind,
    /// Top degree kept; required on a formal base
    #[arg(long)]
    truncate: Option<u32>,
    /// Reduce the result mod m
    #[arg(long = "mod")]
    modulus: Option<u32>,
    /// Universal bundle of this rank over c1..cn (formal base)
    #[arg(long)]
    rank: Option<usize>,
    /// A total Chern class, e.g. `1 + c1 + c2`; repeatable
    #[arg(long = "total", allow_hyphen_values = true)]
    totals: Vec<String>,
    #[arg(long)]
    json: bool,
    /// Line bundle degrees on CP^5
    degrees: Vec<i64>,
}

#[derive(Debug, Subcommand)]
pub enum SchwarzCmd {
    /// Divisibility of f_n by n! for n <= k
    #[command(allow_negative_numbers = true)]
    Check {
        k: usize,
        c: Vec<BigInt>,
        #[arg(long)]
        json: bool,
    },
    /// The four-congruence system for (a1, a2, a3, 0, 0)
    #[command(allow_negative_numbers = true)]
    Explicit {
        a1: BigInt,
        a2: BigInt,
        a3: BigInt,
        /// Use the congruences rederived from f_n instead
        #[arg(long)]
        derived: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare both congruence systems with S5 on [0, B)^3
    Scan {
        #[arg(long, default_value_t = 120)]
        bound: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Run every check
    Paper {
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 120)]
        scan_bound: u32,
    },
}

fn parse_triple(s: &str) -> Result<[i64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z, got `{s}`"));
    }
    let mut out = [0i64; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|e| format!("`{p}`: {e}"))?;
    }
    Ok(out)
}

/// A usage-level failure: message for stderr, exit 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Usage {
        Usage(e.to_string())
    }
}

type Outcome = Result<i32, Usage>;

/// Parses `args` (including the program name) and runs the command.
pub fn parse_and_dispatch(args: &[String], out: &mut impl Write, err: &mut impl Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = writeln!(
                err,
                "usage: chernkit <steenrod|chern|schwarz|classify|census|verify> ... (see --help)"
            );
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut impl Write) -> Outcome {
    match cmd {
        Command::Steenrod(SteenrodCmd::Apply {
            rank,
            prime,
            json,
            expr,
        }) => steenrod_apply(rank, prime, json, &expr, out),
        Command::Chern(c) => chern(c, out),
        Command::Schwarz(s) => schwarz(s, out),
        Command::Classify { a1, a2, a3, json } => classify(&a1, &a2, &a3, json, out),
        Command::Census { min, max, out: path } => match census(min, max, &path) {
            Ok(n) => {
                writeln!(out, "wrote {n} rows to {}", path.display())?;
                Ok(EXIT_OK)
            }
            // a bad box and an unwritable path are both caller errors
            Err(e) => Err(Usage(format!("census failed: {e}"))),
        },
        Command::Verify(VerifyCmd::Paper { json, scan_bound }) => {
            let report = run_all(scan_bound)?;
            if json {
                emit_json(out, &report.to_json())?;
            } else {
                write!(out, "{report}")?;
            }
            Ok(if report.pass() { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

fn emit_json(out: &mut impl Write, value: &impl Serialize) -> Result<(), Usage> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn steenrod_apply(rank: usize, prime: u32, json: bool, text: &str, out: &mut impl Write) -> Outcome {
    let expr = parse_expr(text)?;
    let (op, inner) = match &expr {
        Expr::Call(name, inner) => match name.as_str() {
            "P1" | "P2" => (Some(name.clone()), inner.as_ref().clone()),
            _ => return Err(Usage(format!("unknown operation `{name}`; expected P1 or P2"))),
        },
        e => (None, e.clone()),
    };
    let vars = inner.vars();
    let thom = vars.iter().any(|v| v == "t" || v == "u");
    let ring = Ring::modular(prime)?;
    let result = if thom {
        if prime != 3 {
            return Err(Usage(
                "expressions in t and u live over F_3; use --prime 3".to_string(),
            ));
        }
        let m = P1Algebra::bu_thom_module();
        let p = inner.to_poly(m.table(), m.ring())?;
        match op.as_deref() {
            Some("P1") => m.p1(&p)?,
            Some("P2") => m.p2(&p)?,
            _ => p,
        }
    } else {
        let table = VarTable::chern(rank);
        let p = inner.to_poly(&table, &ring)?;
        match op.as_deref() {
            Some("P1") => steenrod_p(&p, 1, rank, prime)?,
            Some("P2") => steenrod_p(&p, 2, rank, prime)?,
            _ => p,
        }
    };
    if json {
        emit_json(
            out,
            &json!({
                "op": op,
                "input": text,
                "algebra": if thom { "F_3[t,c2,c3]u".to_string() } else { format!("c1..c{rank}") },
                "prime": prime,
                "result": result.to_string(),
            }),
        )?;
    } else {
        writeln!(out, "{result}")?;
    }
    Ok(EXIT_OK)
}

fn chern(cmd: ChernCmd, out: &mut impl Write) -> Outcome {
    let (kind, args) = match cmd {
        ChernCmd::Invert(a) => ("invert", a),
        ChernCmd::Sum(a) => ("sum", a),
        ChernCmd::Dual(a) => ("dual", a),
    };
    let bundles = bundles_from(&args)?;
    let mut it = bundles.into_iter();
    let first = it.next().ok_or_else(|| Usage("no bundle given".to_string()))?;
    let v = match kind {
        "sum" => it.try_fold(first, |acc, b| acc.sum(&b))?,
        _ if it.next().is_some() => {
            return Err(Usage(format!(
                "`chern {kind}` takes one bundle; combine line bundles as degrees or one --total"
            )));
        }
        "invert" => first.negative(),
        _ => first.dual(),
    };
    let mut total = v.total_class().clone();
    if let Some(n) = args.truncate {
        total = total.truncate_above(n);
    }
    if let Some(m) = args.modulus {
        total = total.reduce_mod(m)?;
    }
    let top = total.max_degree().unwrap_or(0) / 2;
    let classes: Vec<String> = (1..=top)
        .map(|i| total.homogeneous_component(2 * i).to_string())
        .collect();
    if args.json {
        emit_json(
            out,
            &json!({
                "operation": kind,
                "rank": v.rank(),
                "base": v.base().to_string(),
                "ring": total.ring().to_string(),
                "total": total.to_string(),
                "classes": classes,
            }),
        )?;
    } else {
        writeln!(out, "rank {} on {} over {}", v.rank(), v.base(), total.ring())?;
        writeln!(out, "c = {total}")?;
        for (i, c) in classes.iter().enumerate() {
            writeln!(out, "c{} = {c}", i + 1)?;
        }
    }
    Ok(EXIT_OK)
}

fn bundles_from(args: &BundleArgs) -> Result<Vec<VirtualBundle>, Usage> {
    let mut out = Vec::new();
    match args.base {
        BaseKind::Cp5 => {
            if args.rank.is_some() {
                return Err(Usage("--rank needs --base formal".to_string()));
            }
            let base = Base::cp(5);
            if !args.degrees.is_empty() {
                out.push(VirtualBundle::line_bundle_sum_total(&args.degrees, 5));
            }
            for text in &args.totals {
                let p = Poly::parse(text, &base.table(), &Ring::Integers)?;
                let rank = p.max_degree().unwrap_or(0) as i64 / 2;
                out.push(VirtualBundle::new(rank, &base, p)?);
            }
        }
        BaseKind::Formal => {
            let n = args
                .truncate
                .ok_or_else(|| Usage("a formal base needs --truncate N".to_string()))?;
            if !args.degrees.is_empty() {
                return Err(Usage("line bundle degrees need --base cp5".to_string()));
            }
            let width = args
                .totals
                .iter()
                .filter_map(|t| parse_expr(t).ok())
                .flat_map(|e| e.vars())
                .filter_map(|v| v.strip_prefix('c').and_then(|k| k.parse::<usize>().ok()))
                .chain(args.rank)
                .max()
                .unwrap_or(1);
            let table = VarTable::chern(width);
            let base = Base::formal(&table, n);
            if let Some(r) = args.rank {
                let g = VirtualBundle::universal(r, n, &Ring::Integers);
                let p = g.total_class().retable(&table)?;
                out.push(VirtualBundle::new(r as i64, &base, p)?);
            }
            for text in &args.totals {
                let p = Poly::parse(text, &table, &Ring::Integers)?;
                let rank = p.max_degree().unwrap_or(0) as i64 / 2;
                out.push(VirtualBundle::new(rank, &base, p)?);
            }
        }
    }
    Ok(out)
}

fn pass_word(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn code(pass: bool) -> i32 {
    if pass {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn schwarz(cmd: SchwarzCmd, out: &mut impl Write) -> Outcome {
    match cmd {
        SchwarzCmd::Check { k, c, json } => {
            if c.len() != k {
                return Err(Usage(format!("expected {k} Chern numbers, got {}", c.len())));
            }
            let report = s_k_check(&ChernTuple::new(c)?);
            if json {
                emit_json(out, &report)?;
            } else {
                for e in &report.entries {
                    writeln!(
                        out,
                        "f{} = {}, mod {}: {} ({})",
                        e.n,
                        e.value,
                        e.modulus,
                        e.residue,
                        pass_word(e.pass)
                    )?;
                }
                writeln!(out, "S{k}: {}", pass_word(report.pass))?;
            }
            Ok(code(report.pass))
        }
        SchwarzCmd::Explicit {
            a1,
            a2,
            a3,
            derived,
            json,
        } => {
            let report = if derived {
                derived_s5_check(&a1, &a2, &a3)
            } else {
                explicit_s5_check(&a1, &a2, &a3)
            };
            if json {
                emit_json(out, &report)?;
            } else {
                for c in &report.congruences {
                    writeln!(
                        out,
                        "{}: {} = {} mod {} ({})",
                        c.label,
                        c.expression,
                        c.residue,
                        c.modulus,
                        pass_word(c.pass)
                    )?;
                }
                writeln!(out, "system: {}", pass_word(report.pass))?;
            }
            Ok(code(report.pass))
        }
        SchwarzCmd::Scan { bound, json } => {
            let report = equivalence_scan(bound);
            if json {
                emit_json(out, &report)?;
            } else {
                writeln!(
                    out,
                    "triples: {} (realizable {})",
                    report.triples, report.realizable
                )?;
                writeln!(
                    out,
                    "explicit system disagreements: {}",
                    report.explicit_mismatches
                )?;
                for m in &report.explicit_examples {
                    writeln!(
                        out,
                        "  ({}, {}, {}): system {}, S5 {}",
                        m.a[0],
                        m.a[1],
                        m.a[2],
                        pass_word(m.system),
                        pass_word(m.s5)
                    )?;
                }
                writeln!(out, "derived system disagreements: {}", report.derived_mismatches)?;
                writeln!(out, "f5 not divisible by 5: {}", report.f5_mod5_failures)?;
            }
            Ok(code(report.pass()))
        }
    }
}

fn classify(a1: &BigInt, a2: &BigInt, a3: &BigInt, json: bool, out: &mut impl Write) -> Outcome {
    let count = count_types(a1, a2, a3);
    let types = enumerate_types(a1, a2, a3);
    if json {
        emit_json(
            out,
            &json!({
                "a": [a1.to_string(), a2.to_string(), a3.to_string()],
                "realizable": count > 0,
                "count": count,
                "types": types,
            }),
        )?;
    } else {
        let word = if count > 0 { "realizable" } else { "not realizable" };
        writeln!(out, "({a1}, {a2}, {a3}): {word}")?;
        writeln!(out, "count: {count}")?;
        for t in &types {
            writeln!(out, "  {t}")?;
        }
    }
    Ok(code(count > 0))
}
