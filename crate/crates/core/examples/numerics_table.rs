//! Closed-form evaluations at special `x` (in Fermat and Lucas quotients,
//! Euler numbers and Legendre symbols) against brute-force sums.
//!
//! `cargo run --example numerics_table -- 5..60`

use rkk_congruences::harness::parse_primes;
use rkk_congruences::theorems::check_numerics_table;

fn main() -> rkk_congruences::Result<()> {
    let range = std::env::args().nth(1).unwrap_or_else(|| "5..60".into());
    for p in parse_primes(&range)? {
        if p <= 3 {
            continue;
        }
        let rows = check_numerics_table(p)?;
        let passed = rows.iter().filter(|r| r.passed()).count();
        println!("p = {p}: {passed}/{} rows pass", rows.len());
        for row in rows.iter().filter(|r| !r.passed()) {
            println!("  {row}");
        }
    }
    Ok(())
}
