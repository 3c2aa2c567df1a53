//! `dalg`: guess differential and difference equations from sequence terms.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use dalg_core::arith::Rational;
use dalg_core::sources::{emit_bfile, emit_terms_json, emit_terms_lines, BUILTINS};
use dalg_core::{
    builtin_terms, guess_function, guess_function_fixed_order, guess_modular, guess_sequence, multi_prime_reconstruct,
    parse_bfile, parse_terms_file, support_refit, verify_candidate, EquationDoc, Error, Field, GuessConfig,
    GuessResult, Poly, PrimeField, Rationals, ResultDoc, Support, TermList,
};

#[derive(Parser)]
#[command(
    name = "dalg",
    version,
    about = "Guess algebraic differential and difference equations from terms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Differential equation for the generating function of the terms.
    GuessFun(GuessFunArgs),
    /// Difference equation for the sequence.
    GuessSeq(GuessSeqArgs),
    /// Guess modulo primes; with two or more, lift the result to the rationals.
    GuessModular(GuessModularArgs),
    /// Print terms of a built-in sequence.
    Terms(TermsArgs),
    /// Check an equation (JSON, as printed by the guess commands) against terms.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Input {
    /// Built-in sequence name (see `dalg terms --list`).
    #[arg(long, group = "source")]
    builtin: Option<String>,
    /// Terms file, one rational per line or JSON; `-` reads stdin.
    #[arg(long, group = "source")]
    input: Option<PathBuf>,
    /// OEIS b-file.
    #[arg(long, group = "source")]
    bfile: Option<PathBuf>,
    /// Number of terms (required with --builtin, truncates files).
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct Common {
    /// Maximal degree of the monomials.
    #[arg(long, default_value_t = 2)]
    deg_ade: usize,
    /// Smallest order tried.
    #[arg(long, default_value_t = 0)]
    start_from_ord: usize,
    /// Leading terms dropped before guessing.
    #[arg(long, default_value_t = 0)]
    offset: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct GuessFunArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    common: Common,
    /// Degree bound of the polynomial coefficients.
    #[arg(long, default_value_t = 2)]
    deg_poly: usize,
    /// Search individual coefficient degrees when the uniform search fails.
    #[arg(long)]
    all_poly_deg: bool,
    /// Only try this order.
    #[arg(long)]
    order: Option<usize>,
    /// Rows taken past the data horizon in the degree search.
    #[arg(long, default_value_t = 0)]
    presume_rows: usize,
    /// Work modulo this prime.
    #[arg(long)]
    modulus: Option<u64>,
}

#[derive(Args)]
struct GuessSeqArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    common: Common,
    /// Homogeneous ansatz, without a constant term.
    #[arg(long)]
    no_affine: bool,
    /// Work modulo this prime.
    #[arg(long)]
    modulus: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Function,
    Sequence,
}

#[derive(Args)]
struct GuessModularArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Kind::Sequence)]
    kind: Kind,
    /// Comma-separated primes.
    #[arg(long, value_delimiter = ',', required = true)]
    primes: Vec<u64>,
    #[arg(long, default_value_t = 2)]
    deg_poly: usize,
    #[arg(long)]
    all_poly_deg: bool,
    #[arg(long, default_value_t = 0)]
    presume_rows: usize,
    #[arg(long)]
    no_affine: bool,
    /// Instead of lifting, solve over the rationals on the modular support
    /// using this many leading terms.
    #[arg(long)]
    refit_terms: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TermsFormat {
    Text,
    Lines,
    Json,
    Bfile,
}

#[derive(Args)]
struct TermsArgs {
    #[arg(long, required_unless_present = "list")]
    builtin: Option<String>,
    #[arg(long, required_unless_present = "list")]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = TermsFormat::Text)]
    format: TermsFormat,
    /// List the built-in sequences.
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON equation or guess result; `-` reads stdin.
    #[arg(long)]
    equation: PathBuf,
    #[command(flatten)]
    input: Input,
    /// Check modulo this prime (implied by a GF(p) guess result).
    #[arg(long)]
    modulus: Option<u64>,
}

/// Lifted equation from several primes.
#[derive(Serialize, Deserialize)]
struct ReconstructionDoc {
    field: String,
    primes: Vec<u64>,
    equation: EquationDoc,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EquationFile {
    Result(ResultDoc),
    Reconstruction(ReconstructionDoc),
    Single(EquationDoc),
}

/// 0: equation found or verified; 1: nothing found or verification failed.
struct Outcome {
    text: String,
    found: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("dalg: {}", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(if out.found { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("dalg: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::GuessFun(a) => {
            let data = load(&a.input)?;
            let mut cfg = GuessConfig::function(a.common.deg_ade, a.deg_poly)
                .with_r_min(a.common.start_from_ord)
                .with_all_poly_deg(a.all_poly_deg)
                .with_offset(a.common.offset)
                .with_presume_rows(a.presume_rows);
            if let Some(p) = a.modulus {
                if a.order.is_some() {
                    return Err(Error::InvalidInput("--order is not supported with --modulus".into()));
                }
                return modular_single(&data, p, &cfg, a.common.format);
            }
            let found = match a.order {
                Some(r) => {
                    cfg.r_min = r;
                    guess_function_fixed_order(&data, &cfg, r)?
                }
                None => guess_function(&data, &cfg)?,
            };
            Ok(report(found, &Rationals, a.common.format))
        }
        Command::GuessSeq(a) => {
            let data = load(&a.input)?;
            let cfg = GuessConfig::sequence(a.common.deg_ade)
                .with_r_min(a.common.start_from_ord)
                .with_offset(a.common.offset)
                .with_affine(!a.no_affine);
            match a.modulus {
                Some(p) => modular_single(&data, p, &cfg, a.common.format),
                None => Ok(report(guess_sequence(&data, &cfg)?, &Rationals, a.common.format)),
            }
        }
        Command::GuessModular(a) => {
            let data = load(&a.input)?;
            let cfg = match a.kind {
                Kind::Function => GuessConfig::function(a.common.deg_ade, a.deg_poly)
                    .with_all_poly_deg(a.all_poly_deg)
                    .with_presume_rows(a.presume_rows),
                Kind::Sequence => GuessConfig::sequence(a.common.deg_ade).with_affine(!a.no_affine),
            }
            .with_r_min(a.common.start_from_ord)
            .with_offset(a.common.offset);
            if let Some(m) = a.refit_terms {
                return refit(&data, &a.primes, &cfg, m, a.common.format);
            }
            if a.primes.len() == 1 {
                return modular_single(&data, a.primes[0], &cfg, a.common.format);
            }
            let poly = multi_prime_reconstruct(&data, &a.primes, &cfg)?;
            let text = match a.common.format {
                Format::Text => format!("{} = 0\n", poly.render(&Rationals)),
                Format::Json => json_line(&ReconstructionDoc {
                    field: "Q".into(),
                    primes: a.primes.clone(),
                    equation: poly.to_doc(&Rationals),
                }),
            };
            Ok(Outcome { text, found: true })
        }
        Command::Terms(a) => {
            if a.list {
                let text = BUILTINS.iter().map(|(n, d)| format!("{n:<26} {d}\n")).collect();
                return Ok(Outcome { text, found: true });
            }
            let list = builtin_terms(a.builtin.as_deref().unwrap_or_default(), a.n.unwrap_or(0))?;
            let text = match a.format {
                TermsFormat::Text => {
                    let parts: Vec<String> = list.terms.iter().map(dalg_core::arith::format_rational).collect();
                    parts.join(" ") + "\n"
                }
                TermsFormat::Lines => emit_terms_lines(&list),
                TermsFormat::Json => emit_terms_json(&list) + "\n",
                TermsFormat::Bfile => emit_bfile(&list)?,
            };
            Ok(Outcome { text, found: true })
        }
        Command::Verify(a) => verify(a),
    }
}

fn load(input: &Input) -> Result<Vec<Rational>, Error> {
    let mut list: TermList = match (&input.builtin, &input.input, &input.bfile) {
        (Some(name), None, None) => {
            let n = input
                .n
                .ok_or_else(|| Error::InvalidInput("--n is required with --builtin".into()))?;
            builtin_terms(name, n)?
        }
        (None, Some(path), None) => parse_terms_file(&read_text(path)?)?,
        (None, None, Some(path)) => parse_bfile(&read_text(path)?)?,
        _ => {
            return Err(Error::InvalidInput(
                "give exactly one of --builtin, --input, --bfile".into(),
            ))
        }
    };
    if let Some(n) = input.n {
        if n < list.terms.len() {
            list.terms.truncate(n);
        }
    }
    Ok(list.terms)
}

fn read_text(path: &PathBuf) -> Result<String, Error> {
    let io_err = |e: io::Error| Error::InvalidInput(format!("{}: {e}", path.display()));
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("documents serialize") + "\n"
}

fn report<F: Field>(found: Option<GuessResult<F::Elem>>, field: &F, format: Format) -> Outcome {
    let Some(r) = found else {
        let text = match format {
            Format::Text => "None\n".to_string(),
            Format::Json => "null\n".to_string(),
        };
        return Outcome { text, found: false };
    };
    let text = match format {
        Format::Text => r.basis.iter().map(|p| format!("{} = 0\n", p.render(field))).collect(),
        Format::Json => json_line(&r.to_doc(field)),
    };
    Outcome { text, found: true }
}

fn modular_single(data: &[Rational], p: u64, cfg: &GuessConfig, format: Format) -> Result<Outcome, Error> {
    let field = PrimeField::new(p)?;
    let run = guess_modular(data, p, cfg)?;
    Ok(report(run.result, &field, format))
}

fn refit(data: &[Rational], primes: &[u64], cfg: &GuessConfig, terms: usize, format: Format) -> Result<Outcome, Error> {
    let mut support: Option<Support> = None;
    for &p in primes {
        let run = guess_modular(data, p, cfg)?;
        if run.result.is_none() {
            return Ok(report::<Rationals>(None, &Rationals, format));
        }
        match &support {
            None => support = Some(run.support),
            Some(s) if *s != run.support => {
                return Err(Error::SupportMismatch(format!(
                    "support modulo {p} differs from modulo {}",
                    primes[0]
                )))
            }
            Some(_) => {}
        }
    }
    let support = support.ok_or_else(|| Error::InvalidInput("no primes given".into()))?;
    let head = &data[..terms.min(data.len())];
    let fit = support_refit(head, &support, cfg, None)?;
    let found = (!fit.basis.is_empty()).then_some(fit);
    Ok(report(found, &Rationals, format))
}

fn verify(a: VerifyArgs) -> Result<Outcome, Error> {
    let text = read_text(&a.equation)?;
    let doc: EquationFile = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        message: format!("not an equation document: {e}"),
    })?;
    let (field_name, equations) = match doc {
        EquationFile::Result(r) => (r.field, r.basis),
        EquationFile::Reconstruction(r) => (r.field, vec![r.equation]),
        EquationFile::Single(e) => ("Q".to_string(), vec![e]),
    };
    let modulus = match a.modulus {
        Some(p) => Some(p),
        None => field_name
            .strip_prefix("GF(")
            .and_then(|s| s.strip_suffix(')'))
            .map(|s| {
                s.parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("bad field `{field_name}`")))
            })
            .transpose()?,
    };
    let data = load(&a.input)?;
    let mut lines = String::new();
    let mut all = true;
    for (i, eq) in equations.iter().enumerate() {
        let (holds, rows, failure) = match modulus {
            None => check(&Rationals, eq, &data)?,
            Some(p) => {
                let f = PrimeField::new(p)?;
                let reduced = data.iter().map(|q| f.from_rational(q)).collect::<Result<Vec<_>, _>>()?;
                check(&f, eq, &reduced)?
            }
        };
        all &= holds;
        lines.push_str(&match failure {
            None => format!("equation {}: holds on {rows} rows\n", i + 1),
            Some(r) => format!("equation {}: fails at row {r} ({rows} rows checked)\n", i + 1),
        });
    }
    Ok(Outcome {
        text: lines,
        found: all,
    })
}

fn check<F: Field>(field: &F, eq: &EquationDoc, data: &[F::Elem]) -> Result<(bool, usize, Option<usize>), Error> {
    let p = Poly::from_doc(field, eq)?;
    let r = verify_candidate(field, &p, data);
    Ok((r.holds, r.rows_checked, r.first_failure))
}
