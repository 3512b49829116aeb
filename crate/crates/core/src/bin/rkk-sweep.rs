//! Command-line sweep over `(r, p, x)` grids.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use rkk_congruences::harness::{self, OutputFormat, RunConfig, XMode};
use rkk_congruences::Error;

/// Verify binomial-sum congruences over a grid of parameters and write a report.
#[derive(Parser, Debug)]
#[command(name = "rkk-sweep", version)]
struct Args {
    /// Comma list of r values.
    #[arg(long = "r", default_value = "3")]
    r: String,
    /// Primes: "lo..hi" (inclusive), or a comma list.
    #[arg(long, default_value = "5..50")]
    primes: String,
    /// Explicit x values, e.g. "2,1/8,-2".
    #[arg(long, conflicts_with = "x_random")]
    x: Option<String>,
    /// Number of random nondegenerate x per (r, p).
    #[arg(long = "x-random", default_value_t = 10)]
    x_random: usize,
    /// Comma list of theorem tags, or "all".
    #[arg(long, default_value = "all")]
    theorems: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Truncation order of the series checks.
    #[arg(long = "series-order", default_value_t = 20)]
    series_order: usize,
    /// Largest n for the polynomial identities.
    #[arg(long = "identity-n", default_value_t = 10)]
    identity_n: usize,
    /// Report format: csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Report file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

fn config(args: Args) -> Result<RunConfig, Error> {
    Ok(RunConfig {
        r_values: harness::parse_r_values(&args.r)?,
        primes: harness::parse_primes(&args.primes)?,
        x_mode: match args.x {
            Some(xs) => XMode::Explicit(harness::parse_x_values(&xs)?),
            None => XMode::Random(args.x_random),
        },
        theorems: harness::parse_theorems(&args.theorems)?,
        seed: args.seed,
        series_order: args.series_order,
        identity_n: args.identity_n,
        format: args.format.parse::<OutputFormat>()?,
        out: args.out,
        jobs: args.jobs,
    })
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    match config(args).and_then(|cfg| harness::run(&cfg)) {
        Ok(summary) => {
            eprintln!("{summary}");
            ExitCode::from(summary.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
