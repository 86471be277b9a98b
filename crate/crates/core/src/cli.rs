//! Command-line front end. `run_cli` is the whole program minus process exit.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::ffi::OsString;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::finite::{FpMatrix, PrimeField};
use crate::instance::gen::{gen_reduced_relaxed, ShapePart};
use crate::instance::json::{full_to_json, parse_instance, reduced_to_json, Instance};
use crate::instance::{gen_full, gen_reduced, parse_shape};
use crate::oracle::{
    dl_fixed_count, enumerate_strata, gen_jordan, hilbert_symbol_bruteforce, local_ring_length, oracle_point_count,
    JordanData,
};
use crate::padic::{hilbert_symbol, PadicScalar, DEFAULT_PRECISION};
use crate::report::{analyze, checked};
use crate::selftest;

pub const DEFAULT_SEED: u64 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "rzint", version, about = "Intersection numbers of minuscule GGP cycles, with brute-force cross-checks")]
struct Cli {
    /// Seed for generators and randomized steps (RZ_SEED overrides it).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit human-readable text (the default).
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Reduce (if needed) and compute the intersection report.
    Analyze {
        /// Path, inline JSON, or - for stdin.
        input: String,
        #[arg(long)]
        with_oracles: bool,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Run one brute-force oracle.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Generate a valid instance as JSON.
    Gen(GenArgs),
    /// Run the acceptance grid.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Invariant subspaces of a reduced instance, via divisors of P.
    Strata { input: String },
    /// Coxeter fixed-point count, reading omega_gram and gbar of a reduced instance.
    Dl { input: String },
    /// Local ring length from {"p","h1","h2","h4"}, or from generated data with --c --d --p.
    LocalRing {
        input: Option<String>,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Hilbert symbol by formula and by search.
    Hilbert {
        #[arg(long)]
        p: u64,
        a: String,
        b: String,
    },
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    p: u64,
    /// Reduced shape such as "q:2:1,pair:1:1".
    #[arg(long)]
    shape: Option<String>,
    /// Allow shapes with no or several Q parts.
    #[arg(long)]
    relaxed: bool,
    /// Generate a full instance of this rank instead.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    precision: Option<u32>,
}

fn read_input(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
        return Ok(s);
    }
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Error::InvalidInput(format!("{arg}: {e}")))
}

fn exit_for(e: &Error) -> i32 {
    if e.is_precision_or_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_VALIDATION
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

#[derive(serde::Deserialize)]
struct JordanIn {
    p: u64,
    h1: Vec<Vec<i64>>,
    h2: Vec<i64>,
    h4: i64,
}

struct Outcome {
    text: String,
    code: i32,
}

fn ok(text: String) -> Result<Outcome> {
    Ok(Outcome { text, code: EXIT_OK })
}

fn reduced_input(input: &str) -> Result<crate::instance::ReducedInstance> {
    match parse_instance(&read_input(input)?, None)? {
        Instance::Reduced(r) => Ok(r),
        Instance::Full(f) => Ok(crate::instance::reduce_instance(&f)?.0),
    }
}

fn dispatch(cli: &Cli, seed: u64) -> Result<Outcome> {
    let json = cli.json;
    match &cli.cmd {
        Cmd::Analyze { input, with_oracles, precision } => {
            let text = read_input(input)?;
            let inst = parse_instance(&text, *precision)?;
            let a = analyze(&text, &inst, seed, *with_oracles)?;
            let code = if a.disagrees() { EXIT_DISAGREE } else { EXIT_OK };
            Ok(Outcome { text: if json { a.to_json() } else { a.to_text() }, code })
        }
        Cmd::Oracle(OracleCmd::Strata { input }) => {
            let red = reduced_input(input)?;
            checked(&red)?;
            let strata = enumerate_strata(&red)?;
            if json {
                return ok(pretty(&strata));
            }
            let mut s = String::new();
            for st in &strata {
                s.push_str(&format!(
                    "D = {:<24} dim U = {}  isotropic = {:<5}  Q' = {:<16} nonempty = {}{}\n",
                    st.divisor.to_string(),
                    st.dim_u,
                    st.isotropic,
                    st.middle.as_ref().map_or("-".into(), |q| q.to_string()),
                    st.nonempty,
                    st.dl_count.map_or(String::new(), |c| format!("  fixed = {c}"))
                ));
            }
            s.push_str(&format!("oracle point count {}\n", oracle_point_count(&strata)));
            ok(s)
        }
        Cmd::Oracle(OracleCmd::Dl { input }) => {
            let red = reduced_input(input)?;
            let n = dl_fixed_count(&red.omega_gram, &red.gbar)?;
            let body = serde_json::json!({ "t": red.t, "fixed_points": n });
            ok(if json { pretty(&body) } else { format!("fixed Lagrangians: {n} (t = {})\n", red.t) })
        }
        Cmd::Oracle(OracleCmd::LocalRing { input, c, d, p }) => {
            let jd = match (input, c, d, p) {
                (Some(input), _, _, _) => {
                    let raw: JordanIn = serde_json::from_str(&read_input(input)?)
                        .map_err(|e| Error::InvalidInput(format!("malformed Jordan data: {e}")))?;
                    let f = PrimeField::new(raw.p)?;
                    let h2 = raw.h2.iter().map(|&x| f.reduce(x)).collect();
                    JordanData::new(FpMatrix::from_i64(&f, &raw.h1)?, h2, f.reduce(raw.h4))?
                }
                (None, Some(c), Some(d), Some(p)) => gen_jordan(*c, *d, *p, seed)?,
                _ => return Err(Error::InvalidInput("give a Jordan data file or all of --c --d --p".into())),
            };
            jd.validate()?;
            let len = local_ring_length(&jd)?;
            let body = serde_json::json!({ "jordan": jd, "c": jd.c(), "length": len });
            ok(if json { pretty(&body) } else { format!("c = {}, local ring length = {len}\n", jd.c()) })
        }
        Cmd::Oracle(OracleCmd::Hilbert { p, a, b }) => {
            let a = PadicScalar::parse(a, *p, DEFAULT_PRECISION)?;
            let b = PadicScalar::parse(b, *p, DEFAULT_PRECISION)?;
            let tame = hilbert_symbol(&a, &b)?;
            let brute = hilbert_symbol_bruteforce(&a, &b)?;
            let body = serde_json::json!({ "p": p, "formula": tame, "search": brute });
            let code = if tame == brute { EXIT_OK } else { EXIT_DISAGREE };
            Ok(Outcome {
                text: if json { pretty(&body) } else { format!("formula {tame}, search {brute}\n") },
                code,
            })
        }
        Cmd::Gen(g) => {
            let v = if let Some(n) = g.n {
                full_to_json(&gen_full(g.p, n, g.precision.unwrap_or(DEFAULT_PRECISION), seed)?)?
            } else {
                let shape: Vec<ShapePart> = parse_shape(g.shape.as_deref().unwrap_or("q:2:1"))?;
                let red = if g.relaxed { gen_reduced_relaxed(g.p, &shape, seed)? } else { gen_reduced(g.p, &shape, seed)? };
                reduced_to_json(&red)
            };
            ok(serde_json::to_string(&v).expect("serializable"))
        }
        Cmd::Selftest => {
            let results = selftest::run_all(seed);
            let code = if results.iter().all(|r| r.passed) {
                EXIT_OK
            } else if results.iter().any(|r| !r.passed && matches!(r.id, 1 | 2 | 3 | 5)) {
                EXIT_DISAGREE
            } else {
                EXIT_INTERNAL
            };
            if json {
                return Ok(Outcome { text: pretty(&results), code });
            }
            let mut s = String::new();
            for r in &results {
                s.push_str(&r.line());
                s.push('\n');
                for f in r.failures.iter().take(10) {
                    s.push_str(&format!("    {f}\n"));
                }
            }
            Ok(Outcome { text: s, code })
        }
    }
}

/// Parse argv, run, write the report to `out` and diagnostics to `err`.
pub fn run_cli<I, T>(argv: I, env_seed: Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(err, "{e}");
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => EXIT_VALIDATION,
            };
        }
    };
    let seed = match env_seed.filter(|s| !s.is_empty()) {
        Some(s) => match s.trim().parse::<u64>() {
            Ok(v) => v,
            Err(_) => {
                let _ = writeln!(err, "error: RZ_SEED={s:?} is not an unsigned integer");
                return EXIT_VALIDATION;
            }
        },
        None => cli.seed.unwrap_or(DEFAULT_SEED),
    };
    match dispatch(&cli, seed) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            if !o.text.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_for(&e)
        }
    }
}
