//! Command-line front end for residue Barrett arithmetic: modular products,
//! modular powers and parameter selection.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use rns_barrett::{bmm_modexp, final_result, select, Error, RangeCase, RnsBarrettContext};

pub mod number;
pub mod param_file;

use number::parse_number;
use param_file::ParamFile;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Math(#[from] Error),
}

impl CliError {
    /// 2 for unmet mathematical conditions, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Math(
                Error::ConditionViolation(_) | Error::SelectionFailed(_) | Error::CaseMismatch(_),
            ) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "rnsba",
    version,
    about = "Barrett modular arithmetic in a residue number system"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute A*B mod N.
    Modmul(ModmulArgs),
    /// Compute X^E mod N.
    Modexp(ModexpArgs),
    /// Select moduli for N and write a parameter file.
    Params(ParamsArgs),
}

#[derive(Debug, Args)]
pub struct ContextArgs {
    /// Modulus N (decimal or 0x-hex). Optional when --params is given.
    #[arg(long, value_parser = parse_number)]
    pub modulus: Option<BigUint>,
    /// Parameter file to use instead of selecting moduli.
    #[arg(long, value_name = "FILE")]
    pub params: Option<PathBuf>,
    /// Maximum bit width of a selected modulus.
    #[arg(long, default_value_t = 30)]
    pub word_bits: u32,
}

#[derive(Debug, Args)]
pub struct ModmulArgs {
    #[command(flatten)]
    pub context: ContextArgs,
    /// Range case [default: 1, or the case in --params]
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub case: Option<u8>,
    /// Print the residue vector of every step.
    #[arg(long)]
    pub trace: bool,
    /// Print the uncorrected representative.
    #[arg(long)]
    pub raw: bool,
    #[arg(value_parser = parse_number)]
    pub a: BigUint,
    #[arg(value_parser = parse_number)]
    pub b: BigUint,
}

#[derive(Debug, Args)]
pub struct ModexpArgs {
    #[command(flatten)]
    pub context: ContextArgs,
    /// Range case, 2 or 4 [default: 2, or the case in --params]
    #[arg(long, value_parser = ["2", "4"])]
    pub case: Option<String>,
    #[arg(value_parser = parse_number)]
    pub x: BigUint,
    #[arg(value_parser = parse_number)]
    pub e: BigUint,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[arg(long, value_parser = parse_number)]
    pub modulus: BigUint,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub case: u8,
    #[arg(long, default_value_t = 30)]
    pub word_bits: u32,
    /// Where to write the parameter file.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

fn case_from(n: u8) -> RangeCase {
    RangeCase::from_number(n).expect("clap restricts the case to 1..=4")
}

fn context(
    args: &ContextArgs,
    case: Option<RangeCase>,
    default: RangeCase,
) -> Result<RnsBarrettContext, CliError> {
    match &args.params {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let file = ParamFile::parse(&text)
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            if let Some(n) = &args.modulus {
                if *n != file.n {
                    return Err(CliError::Usage(format!(
                        "--modulus {n} does not match N = {} in {}",
                        file.n,
                        path.display()
                    )));
                }
            }
            if let Some(case) = case {
                if case != file.case {
                    return Err(CliError::Usage(format!(
                        "--case {case} does not match case {} in {}",
                        file.case,
                        path.display()
                    )));
                }
            }
            file.to_context()
        }
        None => {
            let n = args.modulus.as_ref().ok_or_else(|| {
                CliError::Usage("either --modulus or --params is required".into())
            })?;
            Ok(select(n, case.unwrap_or(default), args.word_bits)?)
        }
    }
}

pub fn modmul(args: &ModmulArgs) -> Result<String, CliError> {
    let ctx = context(&args.context, args.case.map(case_from), RangeCase::Case1)?;
    let a = ctx.encode_operand(&args.a)?;
    let b = ctx.encode_operand(&args.b)?;
    let mut out = String::new();
    let c = if args.trace {
        let trace = ctx.trace_bmm(&a, &b)?;
        out.push_str(&trace.to_string());
        trace.c
    } else {
        ctx.bmm(&a, &b)?
    };
    let value = if args.raw {
        c.decode()
    } else {
        final_result(&c, &ctx)
    };
    out.push_str(&format!("{value}\n"));
    Ok(out)
}

pub fn modexp(args: &ModexpArgs) -> Result<String, CliError> {
    let case = args
        .case
        .as_deref()
        .map(|c| case_from(c.parse().expect("validated by clap")));
    let ctx = context(&args.context, case, RangeCase::Case2)?;
    let x = ctx.encode_operand(&(&args.x % ctx.modulus()))?;
    let y = bmm_modexp(&x, &args.e, &ctx)?;
    Ok(format!("{}\n", final_result(&y, &ctx)))
}

pub fn params(args: &ParamsArgs) -> Result<String, CliError> {
    let ctx = select(&args.modulus, case_from(args.case), args.word_bits)?;
    let file = ParamFile::from_context(&ctx);
    fs::write(&args.out, file.to_string())
        .map_err(|e| CliError::Io(format!("{}: {e}", args.out.display())))?;
    let p = ctx.params();
    let mut out = format!(
        "n: {}\nG: {}\nH: {}\nM bits: {}\nconditions:\n",
        ctx.moduli_set().len(),
        p.g(),
        p.h(),
        ctx.moduli_set().product().bits()
    );
    for check in ctx.conditions() {
        let mark = if check.holds { "ok" } else { "FAILED" };
        out.push_str(&format!("  [{mark}] {}\n", check.label));
    }
    out.push_str(&format!("wrote {}\n", args.out.display()));
    Ok(out)
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Modmul(a) => modmul(a),
        Command::Modexp(a) => modexp(a),
        Command::Params(a) => params(a),
    }
}
