//! Command-line front end: parses semigroup input files, orchestrates the
//! exact Nash blowup pipelines, and emits text or structured reports.
//!
//! Exit codes: 0 when the checked property holds (smooth, unimodular,
//! characteristic-free, match, no violations), 1 when it fails, 2 on input
//! or parameter errors.

mod render;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use toricnash::{
    compare_characteristics, detvar_generators, dual_cone_conjecture_check, nash_charts,
    nash_iterate, scan_minors, AffineSemigroup, Int, Rational,
};

#[derive(Parser)]
#[command(name = "toricnash", version, about = "Exact Nash blowups of affine toric varieties")]
struct Cli {
    /// Output format for reports on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// For detgen: destination of the generator file (required there).
    /// For all other commands: optional destination for the structured
    /// report document.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Write the generator file of the rank-one m x n matrix variety and
    /// echo its generator matrix.
    Detgen { m: usize, n: usize },
    /// Compute the Nash blowup charts of a semigroup input file in one
    /// characteristic. Exits 0 when every chart is smooth.
    Nash {
        input: PathBuf,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Iterate Nash blowups on singular charts up to a depth. Exits 0 when
    /// every leaf is smooth.
    Iterate {
        input: PathBuf,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Exhaustively scan all maximal minors of the rank-one m x n generator
    /// matrix. Exits 0 when every minor is 0, 1, or -1.
    ScanMinors { m: usize, n: usize },
    /// Compare the log-Jacobian exponent set of an input semigroup across
    /// characteristics. Exits 0 when all listed primes agree with 0.
    Charfree {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11")]
        primes: Vec<u64>,
    },
    /// Compare the dual of the rank-one m x n generator cone against its
    /// conjectured ray list. Exits 0 on a match.
    Dualcone { m: usize, n: usize },
    /// Enumerate cone lattice points up to a degree bound and test semigroup
    /// membership. Exits 0 when no saturation violations are found.
    SaturationCheck {
        input: PathBuf,
        /// Degree bound as an integer or fraction, e.g. 6 or 13/2.
        /// Defaults to three times the largest generator degree.
        #[arg(long)]
        bound: Option<String>,
    },
}

/// Envelope for machine-readable output. The `payload` section is canonical:
/// identical inputs serialize to identical bytes. Timing lives outside it.
#[derive(Serialize, Deserialize)]
struct ReportDocument {
    command: String,
    parameters: Value,
    version: String,
    payload: Value,
    timing_ms: u128,
}

struct Outcome {
    command: &'static str,
    parameters: Value,
    payload: Value,
    text: String,
    ok: bool,
}

enum CliError {
    Core(toricnash::Error),
    Io(String),
    Json(String),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(msg) | CliError::Json(msg) | CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<toricnash::Error> for CliError {
    fn from(e: toricnash::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(format!("serialization failed: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok(outcome) => {
            let document = ReportDocument {
                command: outcome.command.to_string(),
                parameters: outcome.parameters,
                version: env!("CARGO_PKG_VERSION").to_string(),
                payload: outcome.payload,
                timing_ms: started.elapsed().as_millis(),
            };
            match cli.format {
                Format::Text => print!("{}", outcome.text),
                Format::Structured => match serde_json::to_string_pretty(&document) {
                    Ok(text) => println!("{text}"),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                },
            }
            if !matches!(cli.command, Command::Detgen { .. }) {
                if let Some(path) = &cli.out {
                    let text = match serde_json::to_string_pretty(&document) {
                        Ok(text) => text,
                        Err(e) => {
                            eprintln!("error: {e}");
                            return ExitCode::from(2);
                        }
                    };
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
            }
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_semigroup(path: &Path) -> Result<AffineSemigroup, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Json(format!("invalid semigroup file {}: {e}", path.display())))
}

fn parse_rational(text: &str) -> Result<Rational, CliError> {
    let invalid = || CliError::Usage(format!("invalid rational bound {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: Int = num.trim().parse().map_err(|_| invalid())?;
    let den: Int = den.trim().parse().map_err(|_| invalid())?;
    if den == Int::from(0) {
        return Err(invalid());
    }
    Ok(Rational::new(num, den))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Detgen { m, n } => {
            let spec = detvar_generators(*m, *n)?;
            let semigroup = spec.semigroup();
            let out = cli.out.as_ref().ok_or_else(|| {
                CliError::Usage("detgen needs --out <path> for the generator file".into())
            })?;
            let file_json = serde_json::to_string_pretty(&semigroup)?;
            std::fs::write(out, file_json + "\n")
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", out.display())))?;
            let matrix = spec.matrix().to_string();
            let matrix_rows: Vec<String> = matrix.lines().map(str::to_string).collect();
            Ok(Outcome {
                command: "detgen",
                parameters: json!({ "m": m, "n": n, "out": out.display().to_string() }),
                payload: json!({
                    "file": serde_json::to_value(&semigroup)?,
                    "matrix": matrix_rows,
                }),
                text: format!(
                    "wrote {} generators in Z^{} to {}\n{matrix}\n",
                    semigroup.generators().len(),
                    semigroup.dim(),
                    out.display()
                ),
                ok: true,
            })
        }
        Command::Nash { input, characteristic } => {
            let semigroup = read_semigroup(input)?;
            let report = nash_charts(&semigroup, *characteristic)?;
            Ok(Outcome {
                command: "nash",
                parameters: json!({
                    "input": input.display().to_string(),
                    "characteristic": characteristic,
                }),
                payload: serde_json::to_value(&report)?,
                text: render::nash_text(&report),
                ok: report.global_smooth,
            })
        }
        Command::Iterate { input, characteristic, depth } => {
            let semigroup = read_semigroup(input)?;
            let tree = nash_iterate(&semigroup, *characteristic, *depth)?;
            Ok(Outcome {
                command: "iterate",
                parameters: json!({
                    "input": input.display().to_string(),
                    "characteristic": characteristic,
                    "depth": depth,
                }),
                payload: serde_json::to_value(&tree)?,
                text: render::tree_text(&tree),
                ok: tree.fully_resolved(),
            })
        }
        Command::ScanMinors { m, n } => {
            let scan = scan_minors(&detvar_generators(*m, *n)?);
            Ok(Outcome {
                command: "scan-minors",
                parameters: json!({ "m": m, "n": n }),
                payload: serde_json::to_value(&scan)?,
                text: render::scan_text(&scan),
                ok: scan.unimodular,
            })
        }
        Command::Charfree { input, primes } => {
            let semigroup = read_semigroup(input)?;
            let comparison = compare_characteristics(&semigroup, primes)?;
            Ok(Outcome {
                command: "charfree",
                parameters: json!({
                    "input": input.display().to_string(),
                    "primes": primes,
                }),
                payload: serde_json::to_value(&comparison)?,
                text: render::charfree_text(&comparison),
                ok: comparison.characteristic_free,
            })
        }
        Command::Dualcone { m, n } => {
            let verdict = dual_cone_conjecture_check(&detvar_generators(*m, *n)?);
            Ok(Outcome {
                command: "dualcone",
                parameters: json!({ "m": m, "n": n }),
                payload: serde_json::to_value(&verdict)?,
                text: render::dualcone_text(&verdict),
                ok: verdict.matches,
            })
        }
        Command::SaturationCheck { input, bound } => {
            let semigroup = read_semigroup(input)?;
            let bound_value = bound.as_deref().map(parse_rational).transpose()?;
            let report = semigroup.bounded_saturation_check(bound_value)?;
            Ok(Outcome {
                command: "saturation-check",
                parameters: json!({
                    "input": input.display().to_string(),
                    "bound": bound,
                }),
                payload: serde_json::to_value(&report)?,
                text: render::saturation_text(&report),
                ok: report.violations.is_empty(),
            })
        }
    }
}
