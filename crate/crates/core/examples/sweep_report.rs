//! A small sweep through the library harness, written as a JSON report.
//!
//! `cargo run --example sweep_report > report.json`

use rkk_congruences::harness::{
    parse_primes, parse_theorems, run_checks, write_report, OutputFormat, RunConfig, XMode,
};

fn main() -> rkk_congruences::Result<()> {
    let cfg = RunConfig {
        r_values: vec![2, 3],
        primes: parse_primes("5..30")?,
        x_mode: XMode::Random(3),
        theorems: parse_theorems("rkksuk,rkk,mystery,numerics,series")?,
        seed: 42,
        series_order: 12,
        ..RunConfig::default()
    };
    let (summary, rows) = run_checks(&cfg)?;
    write_report(&rows, OutputFormat::Json, std::io::stdout().lock())?;
    eprintln!("{summary}");
    Ok(())
}
