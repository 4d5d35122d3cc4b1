//! `pnkit`: evaluate probabilistic norms, run checker suites and write curves.

mod curves;
mod schema;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use schema::Overrides;

/// Usage and schema errors.
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "pnkit", version, about = "Probabilistic normed spaces: checks and curves")]
struct Cli {
    /// Seed for every sampler; falls back to the spec file, then PNKIT_SEED, then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of sampled points per check.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Tolerance for closed-form comparisons.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Compact JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print `ν_p(x)` as CSV.
    Eval {
        spec: PathBuf,
        /// Comma-separated coordinates of `p`; defaults to `point` in the spec.
        #[arg(long, value_parser = parse_finite, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<f64>>,
        /// Comma-separated `x` values; defaults to the spec grid.
        #[arg(long, value_parser = parse_finite, value_delimiter = ',', allow_hyphen_values = true)]
        xs: Option<Vec<f64>>,
    },
    /// Run checker suites and print a JSON report.
    Check {
        spec: PathBuf,
        #[arg(long, value_enum, required = true)]
        suite: Vec<Suite>,
    },
    /// Write a curve as CSV.
    Curves {
        spec: PathBuf,
        #[arg(long, value_enum)]
        what: Curve,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_parser = parse_finite, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<f64>>,
        #[arg(long, value_parser = parse_finite, value_delimiter = ',', allow_hyphen_values = true)]
        xs: Option<Vec<f64>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Axioms,
    Serstnev,
    Better,
    Holder,
    Thm83,
    Fnorm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Curve {
    Nu,
    Tau,
    Radius,
    Delta,
}

fn parse_finite(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("{s:?} is not a finite number")),
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let o = Overrides { seed: cli.seed, samples: cli.samples, tol: cli.tol };
    match cli.command {
        Command::Eval { spec, point, xs } => {
            let spec = schema::load(&spec)?;
            let mut out = std::io::stdout().lock();
            curves::eval(&spec, point, xs, &mut out)?;
            Ok(0)
        }
        Command::Check { spec, suite } => {
            let spec = schema::load(&spec)?;
            let params = spec.params(&o)?;
            let report = suites::run_all(&spec, &suite, &params)?;
            let text = if cli.pretty { serde_json::to_string_pretty(&report)? } else { serde_json::to_string(&report)? };
            println!("{text}");
            Ok(report.outcome.exit_code())
        }
        Command::Curves { spec, what, out, point, xs } => {
            let spec = schema::load(&spec)?;
            let file = std::fs::File::create(&out).map_err(|e| anyhow::anyhow!("cannot write {}: {e}", out.display()))?;
            let mut w = std::io::BufWriter::new(file);
            curves::write_curve(&spec, what, point, xs, &mut w)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
