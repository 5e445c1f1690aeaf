use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pwcanon_core::bench::{self, BenchConfig};
use pwcanon_core::ordered::parse_rational;
use pwcanon_core::syntax::{parse_operator, print, OperatorJson};
use pwcanon_core::{
    canonical_form, equiv_piecewise, pseudonormalform, refine, Breakpoint, BreakpointSet, PieceFunction, PieceRing,
    PiecewiseOperator, PolynomialDomain, RationalDomain,
};

/// Canonical forms of piecewise-defined functions.
#[derive(Parser)]
#[command(name = "pwcanon", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DomainArgs {
    /// Allow rational-function pieces (`/` by non-constants, `undef`).
    #[arg(long)]
    rational: bool,
}

#[derive(Args)]
struct OutputArgs {
    /// Print breakpoints and the 2n+1 pieces as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical form of an expression.
    Canon {
        /// Pseudo-normal form instead.
        #[arg(long)]
        pseudo: bool,
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Input file; standard input when absent or `-`.
        file: Option<PathBuf>,
    },
    /// Evaluate an expression at a rational point.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[command(flatten)]
        domain: DomainArgs,
        file: Option<PathBuf>,
    },
    /// Decide whether two expressions denote the same function.
    /// Exits 0 when they do and 1 when they do not.
    Equiv {
        #[command(flatten)]
        domain: DomainArgs,
        first: PathBuf,
        second: PathBuf,
    },
    /// Add breakpoints without changing the function.
    Refine {
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        points: Vec<String>,
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        output: OutputArgs,
        file: Option<PathBuf>,
    },
    /// Time canonicalization of a random operator.
    Bench {
        #[arg(long)]
        breakpoints: usize,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

type Failure = String;

fn read_input(file: Option<&PathBuf>) -> Result<String, Failure> {
    match file {
        Some(path) if path.as_os_str() != "-" => {
            fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
        }
        _ => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| format!("cannot read standard input: {e}"))?;
            Ok(text)
        }
    }
}

fn point(text: &str) -> Result<Breakpoint, Failure> {
    parse_rational(text.trim())
        .map(Breakpoint::new)
        .map_err(|e| format!("bad rational `{text}`: {e}"))
}

fn render<D>(d: &D, op: &PiecewiseOperator<PieceFunction>, json: bool) -> Result<String, Failure>
where
    D: PieceRing<Piece = PieceFunction>,
{
    if json {
        serde_json::to_string(&OperatorJson::from_operator(op)).map_err(|e| e.to_string())
    } else {
        print(d, op).map_err(|e| e.to_string())
    }
}

fn load<D>(d: &D, file: Option<&PathBuf>) -> Result<PiecewiseOperator<PieceFunction>, Failure>
where
    D: PieceRing<Piece = PieceFunction>,
{
    parse_operator(d, &read_input(file)?).map_err(|e| e.to_string())
}

/// Output text and exit status for a command that has been parsed.
fn execute<D>(d: &D, command: &Command) -> Result<(String, u8), Failure>
where
    D: PieceRing<Piece = PieceFunction>,
{
    match command {
        Command::Canon {
            pseudo, output, file, ..
        } => {
            let op = load(d, file.as_ref())?;
            let out = if *pseudo {
                pseudonormalform(d, &op)
            } else {
                canonical_form(d, &op)
            }
            .map_err(|e| e.to_string())?;
            Ok((render(d, &out, output.json)?, 0))
        }
        Command::Eval { at, file, .. } => {
            let op = load(d, file.as_ref())?;
            let value = op.evaluate(d, &point(at)?).map_err(|e| e.to_string())?;
            Ok((value.to_string(), 0))
        }
        Command::Equiv { first, second, .. } => {
            let p = load(d, Some(first))?;
            let q = load(d, Some(second))?;
            let same = equiv_piecewise(d, &p, &q).map_err(|e| e.to_string())?;
            Ok((same.to_string(), if same { 0 } else { 1 }))
        }
        Command::Refine {
            points, output, file, ..
        } => {
            let op = load(d, file.as_ref())?;
            let pts = points.iter().map(|s| point(s)).collect::<Result<Vec<_>, _>>()?;
            let refined = refine(&op, &BreakpointSet::from_unsorted(pts));
            Ok((render(d, &refined, output.json)?, 0))
        }
        Command::Bench {
            breakpoints,
            reps,
            degree,
            seed,
            output,
        } => {
            let report = bench::run(&BenchConfig {
                breakpoints: *breakpoints,
                degree: *degree,
                reps: *reps,
                seed: *seed,
            })
            .map_err(|e| e.to_string())?;
            let text = if output.json {
                serde_json::to_string(&report).map_err(|e| e.to_string())?
            } else {
                format!(
                    "breakpoints={} degree={} reps={} seed={} median_ms={:.3} mean_ms={:.3} \
                     canonicalize_calls={} eval_calls={} comparisons={} output_breakpoints={}",
                    report.breakpoints,
                    report.degree,
                    report.reps,
                    report.seed,
                    report.median_ms,
                    report.mean_ms,
                    report.canonicalize_calls,
                    report.eval_calls,
                    report.comparisons,
                    report.output_breakpoints
                )
            };
            Ok((text, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let rational = match &cli.command {
        Command::Canon { domain, .. }
        | Command::Eval { domain, .. }
        | Command::Equiv { domain, .. }
        | Command::Refine { domain, .. } => domain.rational,
        Command::Bench { .. } => false,
    };
    let result = if rational {
        execute(&RationalDomain, &cli.command)
    } else {
        execute(&PolynomialDomain, &cli.command)
    };
    match result {
        Ok((text, code)) => {
            println!("{text}");
            ExitCode::from(code)
        }
        Err(message) => {
            eprintln!("pwcanon: {message}");
            ExitCode::from(2)
        }
    }
}
